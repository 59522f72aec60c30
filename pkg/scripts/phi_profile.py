"""Dump the phi profile of the witness maximum clique of P_q as CSV."""

import argparse
import sys

from paley_clique import phi, runner


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("q", type=int)
    args = ap.parse_args()
    _, a = runner.analyze(args.q)
    print(f"# q={args.q} s={a.result.s} B={list(a.result.witness)} t={a.best_t} D={list(a.dset.D)}", file=sys.stderr)
    phi.write_profile_csv(a.profile, sys.stdout)


if __name__ == "__main__":
    main()
