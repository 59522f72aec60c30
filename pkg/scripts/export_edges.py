"""Write the Paley graph P_q as an edge list (for external clique solvers)."""

import argparse

from paley_clique import paley, runner


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("q", type=int)
    ap.add_argument("out")
    args = ap.parse_args()
    _, _, g = runner.build_all(args.q)
    with open(args.out, "w") as fh:
        paley.write_edge_list(g, fh)
    print(f"{g.edge_count()} edges -> {args.out}")


if __name__ == "__main__":
    main()
