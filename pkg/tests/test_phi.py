import itertools
import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paley_clique import clique, phi
from paley_clique.errors import EmptyClique, TIsInB, ZeroR

from conftest import legendre, paley_graph


def chi_of(q):
    return paley_graph(q)[1]


def phi_oracle(B, p):
    return [sum(legendre(b - t, p) for b in B) for t in range(p)]


def test_profile_f5():
    prof = phi.compute_phi({0, 1}, chi_of(5))
    assert prof.phi.tolist() == [1, 1, 0, -2, 0] == phi_oracle((0, 1), 5)
    assert prof.phi1.tolist() == [2, 2, 1, -1, 1]
    assert prof.sum_phi == 0
    assert prof.sum_phi_sq == 6 == 2 * (5 - 2)
    assert phi.third_moment(prof) == -6


def test_moments_f5_by_hand():
    rep = phi.verify_moments(phi.compute_phi({0, 1}, chi_of(5)), 5)
    assert rep.passed
    assert rep.checks["sum_{t not in B} phi1"] == (1, 1)
    assert rep.checks["sum_{t not in B} phi1^2"] == (3, 3)


def test_moments_f13():
    prof = phi.compute_phi({0, 1, 4}, chi_of(13))
    assert prof.phi.tolist() == phi_oracle((0, 1, 4), 13)
    assert phi.verify_moments(prof, 13).passed
    # exact cube sum from the oracle profile
    assert phi.third_moment(prof) == sum(v**3 for v in phi_oracle((0, 1, 4), 13)) == -6


def test_subfield_phi1_vanishes_outside():
    prof = phi.compute_phi({0, 1, 2}, chi_of(9))
    assert phi.verify_moments(prof, 9).passed
    assert (prof.phi1[~prof.in_B] == 0).all()
    assert phi.find_best_t(prof)[1] == -1


def test_empty_clique():
    with pytest.raises(EmptyClique):
        phi.compute_phi([], chi_of(5))


def test_single_element_cube_sum_zero():
    for b in range(13):
        assert phi.third_moment(phi.compute_phi({b}, chi_of(13))) == 0


def test_best_t_examples():
    assert phi.find_best_t(phi.compute_phi({0, 1}, chi_of(5))) == (3, -2)
    t, m = phi.find_best_t(phi.compute_phi({0, 1, 4}, chi_of(13)))
    assert m <= -3
    assert phi.compute_phi({0, 1, 4}, chi_of(13)).phi[t] == m


def test_best_t_tiebreak_smallest():
    prof = phi.compute_phi({0, 1, 4}, chi_of(13))
    t, m = phi.find_best_t(prof)
    outside = [u for u in range(13) if u not in (0, 1, 4)]
    assert t == min(u for u in outside if prof.phi[u] == m)


def test_dset_f5():
    D = phi.construct_dset({0, 1}, 3, chi_of(5))
    assert D.D == (2, 3) and D.r == 2 and D.t == 3
    with pytest.raises(TIsInB):
        phi.construct_dset({0, 1}, 1, chi_of(5))


def lemma_solutions_oracle(B, D, p):
    nq = [z for z in range(1, p) if legendre(z, p) == -1]
    return [(b1, b2, z, d) for b1 in B for b2 in B if b1 != b2 for d in D for z in nq if (b1 - b2 - z * d) % p == 0]


def test_lemma_count_f5():
    sols = lemma_solutions_oracle((0, 1), (2, 3), 5)
    assert sorted(sols) == sorted([(0, 1, 2, 2), (0, 1, 3, 3), (1, 0, 2, 3), (1, 0, 3, 2)])
    D = phi.construct_dset({0, 1}, 3, chi_of(5))
    rep = phi.verify_lemma_count((0, 1), D, chi_of(5))
    assert rep.passed and rep.checks["solutions"] == (4, 4)
    assert 2 * 1 * 2 == 5 - 1  # tight: s(s-1)r = s(q-1)/2


def test_lemma_count_single_element():
    D = phi.construct_dset({0}, 2, chi_of(13))
    assert phi.verify_lemma_count((0,), D, chi_of(13)).checks["solutions"] == (0, 0)


def test_lemma_count_f13_matches_oracle():
    B = (0, 1, 4)
    t, _ = phi.find_best_t(phi.compute_phi(B, chi_of(13)))
    D = phi.construct_dset(B, t, chi_of(13))
    sols = lemma_solutions_oracle(B, D.D, 13)
    assert len(sols) == 3 * 2 * D.r
    assert len({(b1, z) for b1, _, z, _ in sols}) == len(sols)
    assert phi.verify_lemma_count(B, D, chi_of(13)).passed


def test_sbound():
    assert phi.sbound(2, 5) == 2
    assert phi.sbound(3, 13) == 3
    assert phi.sbound(1, 13) == 7
    assert phi.sbound(4, 41) == Fraction(6)
    with pytest.raises(ZeroR):
        phi.sbound(0, 13)


def test_profile_csv():
    buf = io.StringIO()
    phi.write_profile_csv(phi.compute_phi({0, 1}, chi_of(5)), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,phi,phi1,in_B"
    assert lines[4] == "3,-2,-1,0"


@pytest.mark.parametrize("q", [13, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101, 125, 197, 509])
def test_witness_profile_properties(q):
    spec, chi, g = paley_graph(q)
    r = clique.max_clique(g)
    prof = phi.compute_phi(r.witness, chi)
    assert phi.verify_moments(prof, q).passed
    assert phi.verify_pointwise(prof, maximal=True).passed
    t, m = phi.find_best_t(prof)
    D = phi.construct_dset(r.witness, t, chi)
    assert phi.dset_is_valid(D.D, chi)
    assert D.r == (r.s - m) // 2
    assert phi.verify_lemma_count(r.witness, D, chi).passed
    assert math.floor(phi.sbound(D.r, q)) >= r.s


def random_maximal_clique(g, order):
    B = []
    for v in order:
        if all(g.has_edge(v, b) for b in B):
            B.append(v)
    return B


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([13, 17, 25, 29, 37, 41, 49, 53, 61, 73, 89, 97, 125]), st.randoms(use_true_random=False))
def test_identities_for_any_maximal_clique(q, rnd):
    _, chi, g = paley_graph(q)
    order = list(range(q))
    rnd.shuffle(order)
    B = random_maximal_clique(g, order)
    prof = phi.compute_phi(B, chi)
    assert phi.verify_moments(prof, q).passed
    assert phi.verify_pointwise(prof, maximal=True).passed
    assert (np.abs(prof.phi) <= prof.s).all()
    t, m = phi.find_best_t(prof)
    D = phi.construct_dset(B, t, chi)
    assert D.r == (len(B) - m) // 2 >= 1
    assert phi.verify_lemma_count(B, D, chi).passed


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([13, 29, 37, 61]), st.data())
def test_moments_hold_for_non_maximal_cliques(q, data):
    # the five sums only need B - B inside Q + {0}; maximality is not used
    _, chi, g = paley_graph(q)
    r = clique.max_clique(g)
    sub = data.draw(st.lists(st.sampled_from(r.witness), min_size=1, unique=True))
    assert phi.verify_moments(phi.compute_phi(sub, chi), q).passed


def test_pointwise_catches_non_maximal():
    prof = phi.compute_phi({0, 1}, chi_of(13))  # extends by 4
    rep = phi.verify_pointwise(prof, maximal=True)
    assert not rep.passed


def test_remark_excess_statistic_reported():
    # r - s/2 is reported, nothing asserted about its size
    _, chi, g = paley_graph(509)
    r = clique.max_clique(g)
    t, m = phi.find_best_t(phi.compute_phi(r.witness, chi))
    D = phi.construct_dset(r.witness, t, chi)
    assert D.r - Fraction(r.s, 2) == Fraction(-m, 2)
