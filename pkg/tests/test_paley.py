import io
import random

import numpy as np
import pytest

from paley_clique import ffield, paley
from paley_clique.errors import NotOneModFour

from conftest import paley_graph

ORDERS = [5, 9, 13, 17, 25, 29, 37, 41, 49, 53, 81, 125, 169, 197]


def dense(g):
    return g.rows(np.arange(g.q))


def test_p5_is_five_cycle(graph):
    g = graph(5)
    assert g.neighbors(0).tolist() == [1, 4]
    assert [len(g.neighbors(x)) for x in range(5)] == [2] * 5


def test_p13_regular(graph):
    assert graph(13).degrees().tolist() == [6] * 13


def test_p9_prime_subfield_adjacent(graph):
    g = graph(9)
    assert g.has_edge(0, 1) and g.has_edge(0, 2) and g.has_edge(1, 2)


def test_rejects_three_mod_four():
    F = ffield.build_field(7, 1)
    with pytest.raises(NotOneModFour):
        paley.build_paley(F, ffield.build_character(F))


@pytest.mark.parametrize("q", ORDERS)
def test_structure(graph, q):
    g = graph(q)
    A = dense(g)
    assert np.array_equal(A, A.T)
    assert not A.diagonal().any()
    assert g.edge_count() == q * (q - 1) // 4


@pytest.mark.parametrize("q", ORDERS)
def test_srg_matches_matrix_square(graph, q):
    g = graph(q)
    rep = paley.verify_srg(g)
    assert rep.passed, rep.counterexample
    # independent route: common neighbours from A @ A
    A = dense(g).astype(np.int64)
    C = A @ A
    v, k, lam, mu = rep.params
    off = ~np.eye(q, dtype=bool)
    assert (np.diag(C) == k).all()
    assert (C[(A == 1) & off] == lam).all()
    assert (C[(A == 0) & off] == mu).all()


def test_srg_small_parameters(graph):
    assert paley.verify_srg(graph(13)).params == (13, 6, 2, 3)
    assert paley.verify_srg(graph(5)).params == (5, 2, 0, 1)


def test_srg_detects_flipped_bit(graph):
    rep = paley.verify_srg(graph(13).with_flipped_bit(3, 7))
    assert not rep.passed
    assert "vertex 3" in rep.counterexample


def test_srg_detects_symmetric_flip(graph):
    g = graph(29).with_flipped_bit(3, 7).with_flipped_bit(7, 3)
    g = g.with_flipped_bit(3, 8).with_flipped_bit(8, 3)  # keep degrees of 3 intact
    rep = paley.verify_srg(g)
    assert not rep.passed and rep.counterexample


@pytest.mark.parametrize("q,z", [(5, 2), (13, 2), (17, 3)])
def test_self_complementary(graph, q, z):
    g = graph(q)
    assert paley.verify_self_complementary(g, g.chi, z)


@pytest.mark.parametrize("q", ORDERS)
def test_self_complementary_default(graph, q):
    g = graph(q)
    assert paley.verify_self_complementary(g, g.chi)
    # a square multiplier maps the graph to itself, not its complement
    assert not paley.verify_self_complementary(g, g.chi, 1)


@pytest.mark.parametrize("q", [13, 25, 29, 125])
def test_translations_and_square_scalings_are_automorphisms(graph, q):
    g = graph(q)
    rng = random.Random(q)
    for a in rng.sample(range(q), 10):
        assert paley.is_automorphism(g, paley.translation(g, a))
    for m in rng.sample(g.chi.residues.tolist(), 5):
        assert paley.is_automorphism(g, paley.scaling(g, m))
    z = g.chi.smallest_nonresidue()
    assert not paley.is_automorphism(g, paley.scaling(g, z))


def test_edge_list_roundtrip(graph):
    g = graph(13)
    buf = io.StringIO()
    paley.write_edge_list(g, buf)
    buf.seek(0)
    q, edges = paley.read_edge_list(buf)
    assert q == 13 and len(edges) == 13 * 12 // 4
    A = np.zeros((13, 13), dtype=bool)
    for x, y in edges:
        assert x < y
        A[x, y] = A[y, x] = True
    assert np.array_equal(A, dense(g))


def test_pack_unpack_roundtrip():
    rng = np.random.default_rng(0)
    M = rng.random((7, 130)) < 0.5
    assert np.array_equal(paley.unpack_rows(paley.pack_rows(M), 130), M)
