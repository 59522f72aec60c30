"""Parity-split upper bounds on s(q), the prime classifier and the
polynomial zero-count check.

For q = p^k with k odd and q = 1 (mod 4), with n = floor(sqrt(q)):

* n even: s^2 + s - 1 <= q
* n odd:  s^2 + 2s - 2 <= q

Everything here is exact integer / rational arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import EvenExtensionDegree, ExtensionField, NotOneModFour, NotPrime
from .ffield import FieldSpec, build_character, prime_power, prime_sieve
from .phi import compute_phi

CASE_I_IMPROVED = "case_i_improved"
CASE_I_NOT_IMPROVED = "case_i_not_improved"
CASE_II_IMPROVED = "case_ii_improved"
CASE_II_EXCEPTION = "case_ii_exception"
CLASSES = (CASE_I_IMPROVED, CASE_I_NOT_IMPROVED, CASE_II_IMPROVED, CASE_II_EXCEPTION)
IMPROVED = frozenset({CASE_I_IMPROVED, CASE_II_IMPROVED})


def _admissible(q: int) -> tuple[int, int]:
    pk = prime_power(q)
    if pk is None or pk[0] == 2:
        raise NotPrime(f"{q} is not an odd prime power")
    if pk[1] % 2 == 0:
        raise EvenExtensionDegree(f"q = {pk[0]}^{pk[1]} has even extension degree")
    if q % 4 != 1:
        raise NotOneModFour(f"q = {q} is not 1 mod 4")
    return pk


def satisfies(s: int, q: int) -> bool:
    """The inequality for the parity of floor(sqrt q)."""
    n = math.isqrt(q)
    if n % 2 == 0:
        return s * s + s - 1 <= q
    return s * s + 2 * s - 2 <= q


def theorem_bound(q: int) -> int:
    _admissible(q)
    s = math.isqrt(q)
    while not satisfies(s, q):  # at most two probes
        s -= 1
    return s


def classify_prime(p: int) -> str:
    """Bucket of an admissible order (prime, or odd-degree prime power)."""
    _admissible(p)
    n = math.isqrt(p)
    if n % 2:
        return CASE_II_EXCEPTION if p == (n + 1) ** 2 - 3 else CASE_II_IMPROVED
    return CASE_I_IMPROVED if n * n + n - 1 > p else CASE_I_NOT_IMPROVED


def admissible_primes(limit: int, lo: int = 2) -> list[int]:
    return [int(p) for p in prime_sieve(limit) if p % 4 == 1 and p >= lo]


def classification_counts(limit: int) -> Counter:
    counts = Counter({c: 0 for c in CLASSES})
    for p in admissible_primes(limit):
        counts[classify_prime(p)] += 1
    return counts


def improvement_fraction(limit: int) -> Fraction:
    counts = classification_counts(limit)
    total = sum(counts.values())
    if total == 0:
        return Fraction(0)
    return Fraction(sum(counts[c] for c in IMPROVED), total)


@dataclass
class BoundReport:
    q: int
    p: int
    k: int
    n: int
    n_parity: str
    trivial_bound: int
    theorem_bound: int
    improved: bool
    classification: str
    s_exact: int | None = None
    lemma_bound: int | None = None

    def problems(self) -> list[str]:
        out = []
        if self.theorem_bound > self.trivial_bound:
            out.append("theorem bound exceeds trivial bound")
        if self.s_exact is not None and not self.s_exact <= self.theorem_bound <= self.n:
            out.append(f"s = {self.s_exact} violates s <= {self.theorem_bound} <= {self.n}")
        if self.lemma_bound is not None and self.s_exact is not None and self.lemma_bound < self.s_exact:
            out.append(f"lemma bound {self.lemma_bound} below s = {self.s_exact}")
        if (self.classification == CASE_II_EXCEPTION) != (self.n % 2 == 1 and self.q == (self.n + 1) ** 2 - 3):
            out.append("exception classification inconsistent")
        if self.improved != (self.classification in IMPROVED):
            out.append("improved flag disagrees with classification")
        return out


def bound_report(q: int, s_exact: int | None = None, lemma_bound: int | None = None) -> BoundReport:
    p, k = _admissible(q)
    n = math.isqrt(q)
    tb = theorem_bound(q)
    return BoundReport(
        q=q,
        p=p,
        k=k,
        n=n,
        n_parity="odd" if n % 2 else "even",
        trivial_bound=n,
        theorem_bound=tb,
        improved=tb <= n - 1,
        classification=classify_prime(q),
        s_exact=s_exact,
        lemma_bound=lemma_bound,
    )


# -- interpolation over Z_p ------------------------------------------------------


def _inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    return np.array([pow(int(x), p - 2, p) for x in a], dtype=np.int64)


def lagrange_interpolate(xs, ys, p: int) -> np.ndarray:
    """Coefficients (low degree first) of the unique polynomial of degree
    < len(xs) through the points (xs[i], ys[i]) over Z_p."""
    xs = np.asarray(xs, dtype=np.int64) % p
    ys = np.asarray(ys, dtype=np.int64) % p
    n = len(xs)
    # master polynomial prod (x - x_i)
    master = np.zeros(n + 1, dtype=np.int64)
    master[0] = 1
    for x in xs:
        shifted = np.zeros_like(master)
        shifted[1:] = master[:-1]
        master = (shifted - x * master) % p
    # quotients master / (x - x_i) for all i at once, by synthetic division
    quot = np.zeros((n, n), dtype=np.int64)
    carry = np.zeros(n, dtype=np.int64)
    for j in range(n, 0, -1):
        carry = (master[j] + xs * carry) % p
        quot[:, j - 1] = carry
    # quot_i(x_i) = prod_{j != i} (x_i - x_j)
    denom = np.zeros(n, dtype=np.int64)
    for j in range(n - 1, -1, -1):
        denom = (denom * xs + quot[:, j]) % p
    weights = ys * _inv_mod(denom, p) % p
    return (weights[:, None] * quot % p).sum(axis=0) % p


def poly_eval(coeffs: np.ndarray, xs, p: int) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64) % p
    acc = np.zeros_like(xs)
    for c in coeffs[::-1]:
        acc = (acc * xs + int(c)) % p
    return acc


def poly_degree(coeffs: np.ndarray) -> int:
    nz = np.flatnonzero(coeffs)
    return int(nz[-1]) if nz.size else -1


@dataclass
class PolyReport:
    p: int
    s: int
    degree: int
    leading_coefficient: int
    zero_count: int
    roundtrip: bool
    reductio_threshold: Fraction
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def poly_zero_check(B, spec: FieldSpec, phi1=None) -> PolyReport:
    """Interpolate t -> phi1(t) mod p and check degree, leading coefficient
    and the zero count against (p-1)/2.

    phi1 may be passed in (length-p integer vector); otherwise it is computed
    from B with the quadratic character.
    """
    if spec.k != 1:
        raise ExtensionField(f"interpolation check needs a prime field, got q = {spec.q}")
    p = spec.p
    s = len(B)
    if phi1 is None:
        phi1 = compute_phi(B, build_character(spec)).phi1
    ts = np.arange(p)
    values = np.asarray(phi1, dtype=np.int64) % p
    coeffs = lagrange_interpolate(ts, values, p)
    deg = poly_degree(coeffs)
    lead = int(coeffs[deg]) if deg >= 0 else 0
    zeros = int((values == 0).sum())
    roundtrip = bool(np.array_equal(poly_eval(coeffs, ts, p), values))
    half = (p - 1) // 2
    checks = {
        "roundtrip": roundtrip,
        "degree == (p-1)/2": deg == half,
        "leading coefficient == s mod p": lead == s % p,
    }
    if s % p:
        checks["zero count <= (p-1)/2"] = zeros <= half
    return PolyReport(
        p=p,
        s=s,
        degree=deg,
        leading_coefficient=lead,
        zero_count=zeros,
        roundtrip=roundtrip,
        reductio_threshold=Fraction(p + s * s - 2 * s, 2),
        checks=checks,
    )
