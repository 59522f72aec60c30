"""Print s(p) next to the trivial, theorem and lemma bounds for a prime range.

    python3 scripts/run_table.py 5 1000
"""

import argparse
import time

from paley_clique import runner


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("lo", type=int)
    ap.add_argument("hi", type=int)
    ap.add_argument("--prime-powers", action="store_true")
    args = ap.parse_args()

    print(f"{'q':>6} {'s':>3} {'thm':>4} {'sqrt':>4} {'lemma':>5} {'phi_min':>7} {'r':>3} {'nodes':>10} {'ms':>7}")
    t0 = time.perf_counter()
    for q in runner.admissible_orders(args.lo, args.hi, prime_powers=args.prime_powers):
        r, _ = runner.analyze(q)
        tb = "" if r.theorem_bound is None else r.theorem_bound
        print(
            f"{r.q:>6} {r.s_exact:>3} {tb:>4} {r.n:>4} {r.lemma_bound:>5} "
            f"{r.phi_min:>7} {r.r_best:>3} {r.nodes_explored:>10} {r.wall_time_ms:>7}"
        )
    print(f"total {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
