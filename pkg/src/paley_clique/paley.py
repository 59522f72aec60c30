"""The Paley graph P_q as packed bitset rows, plus structural checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotOneModFour
from .ffield import CharacterTable, FieldSpec, add_array, mul_array, sub_array

_CHUNK_CELLS = 1 << 22


def pack_rows(rows: np.ndarray) -> np.ndarray:
    """Pack a (m, n) boolean matrix into (m, ceil(n/64)) uint64 words."""
    rows = np.atleast_2d(rows)
    m, n = rows.shape
    W = max(1, (n + 63) // 64)
    padded = np.zeros((m, W * 64), dtype=bool)
    padded[:, :n] = rows
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64)


def unpack_rows(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(np.atleast_2d(words), dtype="<u8")
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


@dataclass(frozen=True, eq=False)
class PaleyGraph:
    q: int
    adjacency: np.ndarray  # (q, W) uint64, bit y of row x set iff x - y in Q
    spec: FieldSpec
    chi: CharacterTable

    def has_edge(self, x: int, y: int) -> bool:
        return bool((int(self.adjacency[x, y >> 6]) >> (y & 63)) & 1)

    def rows(self, xs) -> np.ndarray:
        """Unpacked boolean rows for the vertices xs."""
        return unpack_rows(self.adjacency[np.asarray(xs)], self.q)

    def row(self, x: int) -> np.ndarray:
        return self.rows([x])[0]

    def neighbors(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.row(x))

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.adjacency).sum(axis=1).astype(np.int64)

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def with_flipped_bit(self, x: int, y: int) -> PaleyGraph:
        """Copy with the single adjacency bit (x, y) toggled (fault injection)."""
        adj = self.adjacency.copy()
        adj[x, y >> 6] ^= np.uint64(1) << np.uint64(y & 63)
        return PaleyGraph(self.q, adj, self.spec, self.chi)


def _chunks(q: int):
    step = max(1, _CHUNK_CELLS // q)
    for lo in range(0, q, step):
        yield np.arange(lo, min(q, lo + step))


def build_paley(spec: FieldSpec, chi: CharacterTable) -> PaleyGraph:
    q = spec.q
    if q % 4 != 1:
        raise NotOneModFour(f"q = {q} is not 1 mod 4; x - y in Q would not be symmetric")
    ys = spec.elements()
    parts = []
    for xs in _chunks(q):
        diff = sub_array(xs[:, None], ys[None, :], spec)
        parts.append(pack_rows(chi.q_set[diff]))
    adj = np.concatenate(parts)
    adj.setflags(write=False)
    return PaleyGraph(q, adj, spec, chi)


@dataclass
class SRGReport:
    passed: bool
    params: tuple[int, int, int, int]
    counterexample: str | None = None


def srg_parameters(q: int) -> tuple[int, int, int, int]:
    return q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4


def verify_srg(g: PaleyGraph) -> SRGReport:
    """Exhaustive degree / common-neighbour check via row popcounts."""
    q = g.q
    params = v, k, lam, mu = srg_parameters(q)
    deg = g.degrees()
    bad = np.flatnonzero(deg != k)
    if bad.size:
        x = int(bad[0])
        return SRGReport(False, params, f"vertex {x} has degree {deg[x]}, expected {k}")
    adj = g.adjacency
    for x in range(q - 1):
        common = np.bitwise_count(adj[x] & adj[x + 1 :]).sum(axis=1)
        edge = g.row(x)[x + 1 :]
        want = np.where(edge, lam, mu)
        off = np.flatnonzero(common != want)
        if off.size:
            y = x + 1 + int(off[0])
            kind = "adjacent" if edge[off[0]] else "non-adjacent"
            return SRGReport(
                False,
                params,
                f"{kind} pair ({x}, {y}) has {common[off[0]]} common neighbours, expected {want[off[0]]}",
            )
        if g.row(x)[x]:
            return SRGReport(False, params, f"self-loop at {x}")
    return SRGReport(True, params)


def is_automorphism(g: PaleyGraph, perm) -> bool:
    """Whether the vertex map x -> perm[x] preserves adjacency."""
    perm = np.asarray(perm)
    for xs in _chunks(g.q):
        if not np.array_equal(g.rows(perm[xs])[:, perm], g.rows(xs)):
            return False
    return True


def verify_self_complementary(g: PaleyGraph, chi: CharacterTable, z: int | None = None) -> bool:
    """x -> z*x with z a non-residue maps P_q onto its complement."""
    if z is None:
        z = chi.smallest_nonresidue()
    if not chi.nq_set[z]:
        return False
    spec = g.spec
    perm = mul_array(z, spec.elements(), spec)
    for xs in _chunks(g.q):
        image = g.rows(perm[xs])[:, perm]
        want = ~g.rows(xs)
        want[np.arange(len(xs)), xs] = False
        if not np.array_equal(image, want):
            return False
    return True


def translation(g: PaleyGraph, a: int) -> np.ndarray:
    return add_array(g.spec.elements(), a, g.spec)


def scaling(g: PaleyGraph, m: int) -> np.ndarray:
    return mul_array(m, g.spec.elements(), g.spec)


def write_edge_list(g: PaleyGraph, fh) -> None:
    """Plain-text export: a line with q, then one ``x y`` line per edge, x < y."""
    fh.write(f"{g.q}\n")
    for x in range(g.q):
        for y in g.neighbors(x):
            if y > x:
                fh.write(f"{x} {y}\n")


def read_edge_list(fh) -> tuple[int, list[tuple[int, int]]]:
    lines = iter(fh)
    q = int(next(lines))
    edges = [tuple(int(t) for t in line.split()) for line in lines if line.strip()]
    return q, edges
