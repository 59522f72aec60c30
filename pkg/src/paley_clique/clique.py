"""Exact clique number of P_q.

The affine maps x -> a*x + b with a a nonzero square are automorphisms and act
transitively on edges, so some maximum clique contains the edge {0, 1}; the
search runs on G01 = N(0) & N(1) only.  It runs in two passes over the
compiled kernels in ``_search``:

1. colouring branch-and-bound for omega(G01), dropping at the root the whole
   orbit of each explored vertex v (the six images of v under the maps that
   permute the triangle {0, 1, v});
2. a lexicographic pass that picks, label by label, the smallest vertex whose
   extension still admits an omega(G01)-clique, yielding the lexicographically
   smallest maximum clique of P_q.

Both passes are single-threaded and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _search
from .config import DEFAULT
from .errors import NotAClique, TooLarge
from .ffield import add_array, inv_array, mul_array, pow_array, sub_array
from .paley import PaleyGraph, pack_rows, unpack_rows

BRANCH_AND_BOUND = "branch_and_bound"
NAIVE_ORACLE = "naive_oracle"


@dataclass(frozen=True)
class CliqueResult:
    s: int
    witness: tuple[int, ...]
    nodes_explored: int
    method: str


def is_clique(B, g: PaleyGraph) -> bool:
    B = sorted(set(int(b) for b in B))
    for i, x in enumerate(B):
        for y in B[i + 1 :]:
            if not g.has_edge(x, y):
                return False
    return True


def is_maximal(B, g: PaleyGraph) -> bool:
    B = [int(b) for b in B]
    if not is_clique(B, g):
        raise NotAClique(f"{sorted(B)} is not a clique of P_{g.q}")
    common = np.ones(g.q, dtype=bool)
    if B:
        common &= np.logical_and.reduce(g.rows(B), axis=0)
    common[B] = False
    return not common.any()


def g01_orbits(g: PaleyGraph, cand: np.ndarray) -> np.ndarray:
    """For each v in cand, the labels {v, 1-v, 1/v, 1-1/v, 1/(1-v), v/(v-1)}.

    Each is the third vertex after mapping one ordered edge of the triangle
    {0, 1, v} onto (0, 1) by an affine automorphism.
    """
    spec = g.spec
    one = 1
    one_minus = sub_array(one, cand, spec)
    inv = inv_array(cand, spec)
    images = [
        cand,
        one_minus,
        inv,
        sub_array(one, inv, spec),
        inv_array(one_minus, spec),
        mul_array(cand, inv_array(sub_array(cand, one, spec), spec), spec),
    ]
    return np.stack(images, axis=1)


def _g01(g: PaleyGraph) -> np.ndarray:
    both = g.row(0) & g.row(1)
    return np.flatnonzero(both)


def max_clique(g: PaleyGraph) -> CliqueResult:
    cand = _g01(g)  # ascending labels
    n = len(cand)
    if n == 0:
        return CliqueResult(2, (0, 1), 1, BRANCH_AND_BOUND)

    sub = g.rows(cand)[:, cand]
    # bit order: descending degree within G01, ties by label
    perm = np.argsort(-sub.sum(axis=1), kind="stable")
    sub = sub[perm][:, perm]
    labels = cand[perm]
    adj = pack_rows(sub)

    pos = np.full(g.q, -1, dtype=np.int64)
    pos[labels] = np.arange(n)
    orb_labels = g01_orbits(g, labels)
    orbit = pos[orb_labels]
    if (orbit < 0).any():
        raise AssertionError("orbit image left G01")  # pragma: no cover

    max_depth = min(n, math.isqrt(g.q)) + 1
    ws = _search.Workspace(n, max_depth)
    first = _search.max_clique_bits(adj, orbit, ws)
    omega = len(first)

    witness = _lex_first(adj, labels, omega, ws)
    nodes = int(ws.nodes[0])
    return CliqueResult(omega + 2, tuple([0, 1] + witness), nodes, BRANCH_AND_BOUND)


def _lex_first(adj: np.ndarray, labels: np.ndarray, size: int, ws) -> list[int]:
    """Lexicographically smallest ``size``-clique, as sorted labels."""
    n = len(labels)
    by_label = np.argsort(labels, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[by_label] = np.arange(n)
    higher = pack_rows(rank[None, :] > rank[:, None])

    S = pack_rows(np.ones((1, n), dtype=bool))[0]
    chosen = []
    need = size
    while need > 0:
        members = unpack_rows(S, n)[0]
        for v in by_label:
            if not members[v]:
                continue
            nxt = S & adj[v] & higher[v]
            if _search.has_clique(adj, nxt, need - 1, ws):
                chosen.append(int(labels[v]))
                S = nxt
                need -= 1
                break
        else:
            raise AssertionError("no clique of the size found in the first pass")  # pragma: no cover
    return sorted(chosen)


def max_clique_naive(g: PaleyGraph, cap: int | None = None) -> CliqueResult:
    """Plain recursive clique enumeration over Python-int bitsets.

    The only cut is cardinality (|clique| + |candidates| <= |best|); no
    colouring, no vertex order, no symmetry.
    """
    if cap is None:
        cap = DEFAULT.naive_cap
    if g.q > cap:
        raise TooLarge(f"naive oracle is limited to q <= {cap}, got {g.q}")
    q = g.q
    nbr = [0] * q
    for x in range(q):
        for y in range(q):
            if x != y and g.has_edge(x, y):
                nbr[x] |= 1 << y
    best: list[int] = []
    nodes = 0

    def extend(clique: list[int], cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if len(clique) > len(best):
            best = clique[:]
        while cand and len(clique) + cand.bit_count() > len(best):
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            extend(clique, cand & nbr[v])
            clique.pop()

    extend([], (1 << q) - 1)
    return CliqueResult(len(best), tuple(best), nodes, NAIVE_ORACLE)


def subfield_clique(g: PaleyGraph) -> tuple[int, ...]:
    """Indices of the subfield F_{p^(k/2)} inside F_{p^k} (k even).

    Found as the roots of x^(p^(k/2)) = x.
    """
    spec = g.spec
    if spec.k % 2:
        raise ValueError("subfield witness needs an even extension degree")
    xs = spec.elements()
    fixed = pow_array(xs, spec.p ** (spec.k // 2), spec) == xs
    return tuple(int(x) for x in np.flatnonzero(fixed))


def translate_clique(B, a: int, g: PaleyGraph) -> tuple[int, ...]:
    return tuple(sorted(int(x) for x in add_array(np.asarray(B), a, g.spec)))
