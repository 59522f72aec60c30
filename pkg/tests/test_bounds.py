import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paley_clique import bounds, ffield
from paley_clique.errors import EvenExtensionDegree, ExtensionField, NotOneModFour

PRIMES = bounds.admissible_primes(20_000)
ODD_K_POWERS = [125, 2197, 3125, 4913]


def brute_theorem_bound(q):
    n = math.isqrt(q)
    ok = (lambda s: s * s + s - 1 <= q) if n % 2 == 0 else (lambda s: s * s + 2 * s - 2 <= q)
    return max(s for s in range(0, q + 1) if ok(s) and s <= n)


@pytest.mark.parametrize("q,b", [(29, 4), (37, 5), (41, 6), (17, 3), (13, 3), (89, 8), (5, 2)])
def test_theorem_bound_examples(q, b):
    assert bounds.theorem_bound(q) == b


def test_theorem_bound_errors():
    with pytest.raises(EvenExtensionDegree):
        bounds.theorem_bound(25)
    with pytest.raises(NotOneModFour):
        bounds.theorem_bound(19)


@given(st.sampled_from(PRIMES[:400] + ODD_K_POWERS))
def test_theorem_bound_matches_brute_force(q):
    assert bounds.theorem_bound(q) == brute_theorem_bound(q)


@given(st.sampled_from(PRIMES + ODD_K_POWERS))
def test_theorem_bound_is_largest_solution(q):
    b = bounds.theorem_bound(q)
    assert bounds.satisfies(b, q)
    assert not bounds.satisfies(b + 1, q) or b == math.isqrt(q)
    assert b <= math.isqrt(q)


@given(st.sampled_from(PRIMES))
def test_exception_iff_no_improvement_for_odd_n(p):
    n = math.isqrt(p)
    is_exc = bounds.classify_prime(p) == bounds.CASE_II_EXCEPTION
    assert is_exc == (bounds.theorem_bound(p) == n and n % 2 == 1)
    assert (bounds.classify_prime(p) in bounds.IMPROVED) == (bounds.theorem_bound(p) < n)


@given(st.integers(3, 10**6).filter(lambda n: n % 2 == 1))
def test_perfect_square_boundaries(n):
    # q just below (n+1)^2 exercises the isqrt boundary
    q = (n + 1) ** 2 - 3
    assert math.isqrt(q) == n
    assert bounds.satisfies(n, q) and not bounds.satisfies(n, q - 4)


def test_classify_examples():
    assert bounds.classify_prime(13) == bounds.CASE_II_EXCEPTION
    assert bounds.classify_prime(89) == bounds.CASE_II_IMPROVED
    assert bounds.theorem_bound(89) == 8
    assert bounds.classify_prime(41) == bounds.CASE_I_NOT_IMPROVED
    assert bounds.classify_prime(5) == bounds.CASE_I_NOT_IMPROVED


def test_fraction_small():
    assert bounds.improvement_fraction(13) == 0
    counts = bounds.classification_counts(13)
    assert sum(counts.values()) == 2


def test_partition_and_counts_against_trial_division():
    counts = bounds.classification_counts(10_000)
    primes = [p for p in range(5, 10_001) if p % 4 == 1 and all(p % d for d in range(2, math.isqrt(p) + 1))]
    assert sum(counts.values()) == len(primes)
    assert set(counts) == set(bounds.CLASSES)


def test_fraction_stability():
    a, b = bounds.improvement_fraction(10**5), bounds.improvement_fraction(10**6)
    assert abs(a - b) < Fraction(2, 100)


def test_bound_report_fields():
    rep = bounds.bound_report(29, s_exact=4, lemma_bound=4)
    assert (rep.n, rep.n_parity, rep.trivial_bound, rep.theorem_bound) == (5, "odd", 5, 4)
    assert rep.improved and rep.classification == bounds.CASE_II_IMPROVED
    assert rep.problems() == []
    assert bounds.bound_report(29, s_exact=5).problems()


# -- interpolation ------------------------------------------------------------


def interpolate_by_full_field_basis(values, p):
    """f(x) = sum_t f(t) (1 - (x - t)^(p-1)), expanded with binomials."""
    coeffs = [0] * p
    for t, v in enumerate(values):
        if v % p == 0:
            continue
        coeffs[0] += v
        for j in range(p):
            coeffs[j] -= v * math.comb(p - 1, j) * pow(-t, p - 1 - j, p)
    return [c % p for c in coeffs]


@pytest.mark.parametrize("p", [5, 13, 29, 37])
def test_lagrange_matches_full_field_formula(p):
    rng = np.random.default_rng(p)
    vals = rng.integers(-5, 6, p)
    coeffs = bounds.lagrange_interpolate(np.arange(p), vals, p)
    assert coeffs.tolist() == interpolate_by_full_field_basis(vals.tolist(), p)


def test_lagrange_partial_nodes():
    xs, ys = [1, 4, 6], [2, 0, 5]
    c = bounds.lagrange_interpolate(xs, ys, 7)
    assert bounds.poly_eval(c, xs, 7).tolist() == ys
    assert bounds.poly_degree(c) <= 2


def test_poly_check_f13():
    F = ffield.build_field(13, 1)
    rep = bounds.poly_zero_check((0, 1, 4), F)
    assert (rep.degree, rep.leading_coefficient) == (6, 3)
    assert rep.zero_count <= 6 and rep.passed


def test_poly_check_f5():
    F = ffield.build_field(5, 1)
    rep = bounds.poly_zero_check((0, 1), F)
    assert (rep.degree, rep.leading_coefficient, rep.zero_count) == (2, 2, 0)
    assert rep.passed and rep.roundtrip


def test_poly_check_rejects_extension():
    with pytest.raises(ExtensionField):
        bounds.poly_zero_check((0, 1, 2), ffield.build_field(3, 2))
