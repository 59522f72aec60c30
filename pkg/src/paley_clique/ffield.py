"""Arithmetic in F_{p^k} on canonical integer indices.

An element with coefficient vector (c_0, ..., c_{k-1}) over Z_p is stored as
the integer ``sum(c_i * p**i)``, so that index 0 is zero, index 1 is one and,
for prime fields, the index is the residue itself.  Scalar operations work on
Python ints; the ``*_array`` variants apply the same arithmetic elementwise to
numpy index arrays and are what the table builders use.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT
from .errors import (
    CharacterMismatch,
    DegreeMismatch,
    IndexOutOfRange,
    NotPrime,
    OrderTooLarge,
    ReduciblePolynomial,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_sieve(limit: int) -> np.ndarray:
    """All primes <= limit, ascending."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for d in range(3, math.isqrt(limit) + 1, 2):
        if sieve[d]:
            sieve[d * d :: 2 * d] = False
    return np.flatnonzero(sieve)


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q == p**k, or None when q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return (q, 1)


# -- polynomials over Z_p, coefficient lists low degree first ---------------


def _poly_rem(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num modulo the monic polynomial den."""
    r = [c % p for c in num]
    d = len(den) - 1
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c:
            for j in range(d + 1):
                r[i - d + j] = (r[i - d + j] - c * den[j]) % p
    return r[:d]


def is_irreducible(modulus: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2.

    A reducible divisor always has an irreducible factor of no larger degree,
    so testing all monic divisors is equivalent to testing the irreducible
    ones.
    """
    k = len(modulus) - 1
    if k <= 1:
        return k == 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_rem(list(modulus), [*low, 1], p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over Z_p.

    Candidates are ordered by their low coefficients (c_0, ..., c_{k-1}).
    """
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        if low[0] == 0:
            continue  # divisible by x
        cand = (*low, 1)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {k} over Z_{p}")  # pragma: no cover


def format_poly(coeffs: tuple[int, ...]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) or "0"


# -- the field ---------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.k)

    def __str__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.q} = Z_{self.p}[x]/({format_poly(self.modulus)})"

    @property
    def minus_one(self) -> int:
        return self.p - 1

    def check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.q:
                raise IndexOutOfRange(f"{x} not an element index of F_{self.q}")

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # digit decomposition
    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            x, c = divmod(x, self.p)
            out.append(c)
        return out

    def from_digits(self, ds) -> int:
        x = 0
        for c in reversed(ds):
            x = x * self.p + c
        return x

    def digits_array(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        pw = self.p ** np.arange(self.k, dtype=np.int64)
        return (xs[..., None] // pw) % self.p

    def from_digits_array(self, ds: np.ndarray) -> np.ndarray:
        pw = self.p ** np.arange(self.k, dtype=np.int64)
        return (ds * pw).sum(axis=-1)


def build_field(p: int, k: int = 1, modulus=None, *, order_cap: int | None = None) -> FieldSpec:
    if order_cap is None:
        order_cap = DEFAULT.order_cap
    if p == 2 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if k < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {k}")
    if p**k > order_cap:
        raise OrderTooLarge(f"q = {p}^{k} exceeds the order cap {order_cap}")
    if modulus is None:
        return FieldSpec(p, k, smallest_irreducible(p, k))
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1:
        raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {k}")
    if modulus[-1] != 1:
        raise DegreeMismatch("modulus must be monic")
    if not is_irreducible(modulus, p):
        raise ReduciblePolynomial(f"{format_poly(modulus)} is reducible over Z_{p}")
    return FieldSpec(p, k, modulus)


def field_for_order(q: int, **kw) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise NotPrime(f"{q} is not a prime power")
    return build_field(*pk, **kw)


# -- scalar arithmetic ---------------------------------------------------------


def field_add(a: int, b: int, spec: FieldSpec) -> int:
    spec.check(a, b)
    if spec.k == 1:
        return (a + b) % spec.p
    p = spec.p
    return spec.from_digits([(x + y) % p for x, y in zip(spec.digits(a), spec.digits(b))])


def field_neg(a: int, spec: FieldSpec) -> int:
    spec.check(a)
    if spec.k == 1:
        return -a % spec.p
    return spec.from_digits([-c % spec.p for c in spec.digits(a)])


def field_sub(a: int, b: int, spec: FieldSpec) -> int:
    return field_add(a, field_neg(b, spec), spec)


def _mul(a: int, b: int, spec: FieldSpec) -> int:
    p, k = spec.p, spec.k
    if k == 1:
        return a * b % p
    da, db = spec.digits(a), spec.digits(b)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] += x * y
    return spec.from_digits(_poly_rem(prod, list(spec.modulus), p))


def field_mul(a: int, b: int, spec: FieldSpec) -> int:
    spec.check(a, b)
    return _mul(a, b, spec)


def field_pow(a: int, e: int, spec: FieldSpec) -> int:
    """Square-and-multiply; 0**0 == 1 by convention."""
    spec.check(a)
    if e < 0:
        raise ValueError("negative exponent")
    result, base = 1, a
    while e:
        if e & 1:
            result = _mul(result, base, spec)
        base = _mul(base, base, spec)
        e >>= 1
    return result


def field_inv(a: int, spec: FieldSpec) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return field_pow(a, spec.q - 2, spec)


def field_div(a: int, b: int, spec: FieldSpec) -> int:
    return field_mul(a, field_inv(b, spec), spec)


# -- vectorised arithmetic -------------------------------------------------


def add_array(a, b, spec: FieldSpec) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    if spec.k == 1:
        return (a + b) % spec.p
    return spec.from_digits_array((spec.digits_array(a) + spec.digits_array(b)) % spec.p)


def neg_array(a, spec: FieldSpec) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if spec.k == 1:
        return -a % spec.p
    return spec.from_digits_array(-spec.digits_array(a) % spec.p)


def sub_array(a, b, spec: FieldSpec) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    if spec.k == 1:
        return (a - b) % spec.p
    return spec.from_digits_array((spec.digits_array(a) - spec.digits_array(b)) % spec.p)


def mul_array(a, b, spec: FieldSpec) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    p, k = spec.p, spec.k
    if k == 1:
        return a * b % p
    da, db = np.broadcast_arrays(spec.digits_array(a), spec.digits_array(b))
    prod = np.zeros(da.shape[:-1] + (2 * k - 1,), dtype=np.int64)
    for i in range(k):
        prod[..., i : i + k] = (prod[..., i : i + k] + da[..., i : i + 1] * db) % p
    m = np.asarray(spec.modulus, dtype=np.int64)
    for i in range(2 * k - 2, k - 1, -1):
        c = prod[..., i : i + 1]
        prod[..., i - k : i + 1] = (prod[..., i - k : i + 1] - c * m) % p
    return spec.from_digits_array(prod[..., :k])


def pow_array(a, e: int, spec: FieldSpec) -> np.ndarray:
    base = np.asarray(a, dtype=np.int64)
    result = np.ones_like(base)
    while e:
        if e & 1:
            result = mul_array(result, base, spec)
        base = mul_array(base, base, spec)
        e >>= 1
    return result


def inv_array(a, spec: FieldSpec) -> np.ndarray:
    return pow_array(a, spec.q - 2, spec)


# -- quadratic character -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """chi over F_q: +1 on nonzero squares, -1 on non-squares, 0 at 0.

    ``q_set``/``nq_set`` are dense boolean membership masks for Q and NQ.
    """

    spec: FieldSpec
    values: np.ndarray
    q_set: np.ndarray
    nq_set: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    @property
    def residues(self) -> np.ndarray:
        return np.flatnonzero(self.q_set)

    @property
    def nonresidues(self) -> np.ndarray:
        return np.flatnonzero(self.nq_set)

    def smallest_nonresidue(self) -> int:
        return int(np.argmax(self.nq_set))


def build_character(spec: FieldSpec) -> CharacterTable:
    xs = spec.elements()
    q_set = np.zeros(spec.q, dtype=bool)
    q_set[mul_array(xs[1:], xs[1:], spec)] = True

    euler = pow_array(xs, (spec.q - 1) // 2, spec)
    euler_sq = euler == 1
    euler_sq[0] = False
    bad = np.flatnonzero(euler_sq != q_set)
    if bad.size:
        raise CharacterMismatch(f"square table and Euler criterion disagree at {bad[:5].tolist()}")
    if not np.all(euler[1:][~q_set[1:]] == spec.minus_one):
        raise CharacterMismatch("Euler criterion produced a value other than +-1")

    nq_set = ~q_set
    nq_set[0] = False
    values = np.where(q_set, 1, -1).astype(np.int8)
    values[0] = 0
    for arr in (values, q_set, nq_set):
        arr.setflags(write=False)
    return CharacterTable(spec, values, q_set, nq_set)
