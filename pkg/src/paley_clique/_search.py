"""Compiled branch-and-bound kernels over packed uint64 bitsets.

Bitset layout: vertex v lives in word v // 64, bit v % 64.  All kernels take
preallocated, depth-indexed workspaces.
"""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
_DEBRUIJN_TABLE = np.array(
    [
        0, 47, 1, 56, 48, 27, 2, 60, 57, 49, 41, 37, 28, 16, 3, 61,
        54, 58, 35, 52, 50, 42, 21, 44, 38, 32, 29, 23, 17, 11, 4, 62,
        46, 55, 26, 59, 40, 36, 15, 53, 34, 51, 20, 43, 31, 22, 10, 45,
        25, 39, 14, 33, 19, 30, 9, 24, 13, 18, 8, 12, 7, 6, 5, 63,
    ],
    dtype=np.int64,
)  # fmt: skip


@njit(cache=True, inline="always")
def _ctz(x):
    # x != 0
    return _DEBRUIJN_TABLE[((x ^ (x - _ONE)) * _DEBRUIJN) >> np.uint64(58)]


@njit(cache=True)
def popcount(P):
    c = 0
    for w in range(P.shape[0]):
        x = P[w]
        while x:
            x &= x - _ONE
            c += 1
    return c


@njit(cache=True)
def _color_sort(P, adj, U, Qb, order, colors, kmin):
    """Greedy sequential colouring of P in bit order.

    Vertices whose colour is >= kmin are written to order/colors in
    non-decreasing colour; returns how many were written.
    """
    W = P.shape[0]
    for w in range(W):
        U[w] = P[w]
    left = popcount(P)
    m = 0
    k = 0
    while left > 0:
        k += 1
        for w in range(W):
            Qb[w] = U[w]
        for w in range(W):
            while Qb[w]:
                b = _ctz(Qb[w])
                bit = _ONE << np.uint64(b)
                v = w * 64 + b
                U[w] &= ~bit
                Qb[w] &= ~bit
                left -= 1
                for j in range(w, W):
                    Qb[j] &= ~adj[v, j]
                if k >= kmin:
                    order[m] = v
                    colors[m] = k
                    m += 1
    return m


@njit(cache=True)
def _enter(d, adj, Pst, Ust, Qst, ost, cst, ist, best, nodes):
    nodes[0] += 1
    kmin = best[0] - d + 1
    if kmin < 1:
        kmin = 1
    ist[d] = _color_sort(Pst[d], adj, Ust[d], Qst[d], ost[d], cst[d], kmin) - 1


@njit(cache=True)
def _expand(top, adj, Pst, Ust, Qst, ost, cst, ist, best, cur, bestset, nodes, stop_at):
    """Branch-and-bound below the partial clique cur[:top] with candidates Pst[top].

    Iterative with an explicit depth stack: ist[d] is the next position in
    the colour order of depth d.  Stops early once best reaches stop_at.
    """
    W = adj.shape[1]
    d = top
    _enter(d, adj, Pst, Ust, Qst, ost, cst, ist, best, nodes)
    while True:
        i = ist[d]
        if i < 0 or d + cst[d, i] <= best[0]:
            if d == top:
                return
            d -= 1
            if best[0] >= stop_at:
                return
            v = ost[d, ist[d]]
            Pst[d, v >> 6] &= ~(_ONE << np.uint64(v & 63))
            ist[d] -= 1
            continue
        v = ost[d, i]
        cur[d] = v
        nonempty = False
        for w in range(W):
            x = Pst[d, w] & adj[v, w]
            Pst[d + 1, w] = x
            if x:
                nonempty = True
        if nonempty:
            d += 1
            _enter(d, adj, Pst, Ust, Qst, ost, cst, ist, best, nodes)
            continue
        if d + 1 > best[0]:
            best[0] = d + 1
            for j in range(d + 1):
                bestset[j] = cur[j]
            if best[0] >= stop_at:
                return
        Pst[d, v >> 6] &= ~(_ONE << np.uint64(v & 63))
        ist[d] -= 1


@njit(cache=True)
def _search_root(adj, orbit, Pst, Ust, Qst, ost, cst, ist, best, cur, bestset, nodes):
    """Depth-0 loop of the maximum search with orbit pruning.

    After every clique through v has been explored, every vertex in v's
    orbit (row ``orbit[v]``, -1 padded) is dropped from the candidate set.
    """
    nodes[0] += 1
    n, W = adj.shape
    P = Pst[0]
    NP = Pst[1]
    order = ost[0]
    colors = cst[0]
    m = _color_sort(P, adj, Ust[0], Qst[0], order, colors, 1)
    removed = np.zeros(n, dtype=np.bool_)
    for i in range(m - 1, -1, -1):
        if colors[i] <= best[0]:
            return
        v = order[i]
        if removed[v]:
            continue
        cur[0] = v
        nonempty = False
        for w in range(W):
            NP[w] = P[w] & adj[v, w]
            if NP[w]:
                nonempty = True
        if nonempty:
            _expand(1, adj, Pst, Ust, Qst, ost, cst, ist, best, cur, bestset, nodes, n + 1)
        elif best[0] < 1:
            best[0] = 1
            bestset[0] = v
        for j in range(orbit.shape[1]):
            u = orbit[v, j]
            if u >= 0:
                removed[u] = True
                P[u >> 6] &= ~(_ONE << np.uint64(u & 63))


class Workspace:
    """Per-graph scratch arrays for the kernels (depth-indexed stacks)."""

    def __init__(self, n: int, max_depth: int):
        W = max(1, (n + 63) // 64)
        D = max_depth + 2
        self.n, self.W = n, W
        self.P = np.zeros((D, W), dtype=np.uint64)
        self.U = np.zeros((D, W), dtype=np.uint64)
        self.Q = np.zeros((D, W), dtype=np.uint64)
        self.order = np.zeros((D, max(n, 1)), dtype=np.int64)
        self.colors = np.zeros((D, max(n, 1)), dtype=np.int64)
        self.pos = np.zeros(D, dtype=np.int64)
        self.cur = np.zeros(D, dtype=np.int64)
        self.bestset = np.zeros(D, dtype=np.int64)
        self.best = np.zeros(1, dtype=np.int64)
        self.nodes = np.zeros(1, dtype=np.int64)


def max_clique_bits(adj: np.ndarray, orbit: np.ndarray, ws: Workspace) -> list[int]:
    """Maximum clique of the bitset graph (bit positions)."""
    n = adj.shape[0]
    if n == 0:
        return []
    ws.P[0] = 0
    for v in range(n):
        ws.P[0, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    ws.best[0] = 0
    _search_root(adj, orbit, ws.P, ws.U, ws.Q, ws.order, ws.colors, ws.pos, ws.best, ws.cur, ws.bestset, ws.nodes)
    return ws.bestset[: ws.best[0]].tolist()


def has_clique(adj: np.ndarray, P: np.ndarray, size: int, ws: Workspace) -> bool:
    """Whether the vertices of bitset P contain a clique of ``size``."""
    if size <= 0:
        return True
    if popcount(P) < size:
        return False
    if size == 1:
        return True
    ws.P[0] = P
    ws.best[0] = size - 1
    _expand(0, adj, ws.P, ws.U, ws.Q, ws.order, ws.colors, ws.pos, ws.best, ws.cur, ws.bestset, ws.nodes, size)
    return bool(ws.best[0] >= size)
