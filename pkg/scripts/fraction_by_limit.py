"""Improved fraction of primes p = 1 mod 4 below 10^2 .. 10^N."""

import argparse

from paley_clique import bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=7)
    args = ap.parse_args()
    for e in range(2, args.max_exp + 1):
        counts = bounds.classification_counts(10**e)
        frac = bounds.improvement_fraction(10**e)
        detail = "  ".join(f"{c}={counts[c]}" for c in bounds.CLASSES)
        print(f"10^{e:<2} {float(frac):.4f}  {detail}")


if __name__ == "__main__":
    main()
