"""Character-sum profile phi(t) = sum_{b in B} chi(b - t) of a clique B.

All moments are exact Python integers.  For a clique B of size s in F_q:

    sum_t phi(t)               = 0
    sum_t phi(t)^2             = s(q - s)
    sum_{t not in B} phi(t)    = -s(s - 1)
    sum_{t not in B} phi1(t)   = q - s^2          (phi1 = phi + 1)
    sum_{t not in B} phi1(t)^2 = (s + 1)(q - s^2)

A translate D = (B - t) & NQ with t outside B has D - D inside Q + {0}, and
any such D of size r gives s(q) <= 1 + (q - 1) / (2r).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import EmptyClique, TIsInB, ZeroR
from .ffield import CharacterTable, mul_array, sub_array


@dataclass(frozen=True, eq=False)
class PhiProfile:
    B: tuple[int, ...]
    s: int
    q: int
    phi: np.ndarray
    phi1: np.ndarray
    in_B: np.ndarray
    sum_phi: int
    sum_phi_sq: int
    sum_phi_cube: int
    sum_phi_outside: int
    sum_phi1_outside: int
    sum_phi1_sq_outside: int


@dataclass(frozen=True)
class DSet:
    t: int
    D: tuple[int, ...]
    r: int


@dataclass
class Report:
    """Named integer identities: name -> (got, expected)."""

    checks: dict[str, tuple[int, int]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[str]:
        return [f"{k}: got {g}, expected {e}" for k, (g, e) in self.checks.items() if g != e]

    @property
    def passed(self) -> bool:
        return not self.failures


def compute_phi(B, chi: CharacterTable) -> PhiProfile:
    B = tuple(sorted(int(b) for b in B))
    if not B:
        raise EmptyClique("phi is defined for a nonempty clique")
    spec = chi.spec
    ts = spec.elements()
    phi = np.zeros(spec.q, dtype=np.int64)
    for b in B:
        phi += chi.values[sub_array(b, ts, spec)]
    in_B = np.zeros(spec.q, dtype=bool)
    in_B[list(B)] = True
    phi1 = phi + 1
    out = ~in_B
    for arr in (phi, phi1, in_B):
        arr.setflags(write=False)
    return PhiProfile(
        B=B,
        s=len(B),
        q=spec.q,
        phi=phi,
        phi1=phi1,
        in_B=in_B,
        sum_phi=int(phi.sum()),
        sum_phi_sq=int((phi * phi).sum()),
        sum_phi_cube=int((phi**3).sum()),
        sum_phi_outside=int(phi[out].sum()),
        sum_phi1_outside=int(phi1[out].sum()),
        sum_phi1_sq_outside=int((phi1[out] ** 2).sum()),
    )


def verify_moments(profile: PhiProfile, q: int | None = None) -> Report:
    q = profile.q if q is None else q
    s = profile.s
    rep = Report()
    rep.checks["sum phi"] = (profile.sum_phi, 0)
    rep.checks["sum phi^2"] = (profile.sum_phi_sq, s * (q - s))
    rep.checks["sum_{t not in B} phi"] = (profile.sum_phi_outside, -s * (s - 1))
    rep.checks["sum_{t not in B} phi1"] = (profile.sum_phi1_outside, q - s * s)
    rep.checks["sum_{t not in B} phi1^2"] = (profile.sum_phi1_sq_outside, (s + 1) * (q - s * s))
    return rep


def verify_pointwise(profile: PhiProfile, maximal: bool = True) -> Report:
    """phi = s-1 on B; outside B (maximal B) phi <= s-2 and phi = s mod 2."""
    s, phi, in_B = profile.s, profile.phi, profile.in_B
    rep = Report()
    rep.checks["t in B with phi != s-1"] = (int((phi[in_B] != s - 1).sum()), 0)
    rep.checks["|phi| > s"] = (int((np.abs(phi) > s).sum()), 0)
    if maximal:
        out = phi[~in_B]
        rep.checks["t not in B with phi > s-2"] = (int((out > s - 2).sum()), 0)
        rep.checks["t not in B with phi != s mod 2"] = (int(((out - s) % 2 != 0).sum()), 0)
    return rep


def find_best_t(profile: PhiProfile) -> tuple[int, int]:
    """(t, phi(t)) minimising phi over t outside B, smallest t on ties."""
    masked = np.where(profile.in_B, np.iinfo(np.int64).max, profile.phi)
    t = int(np.argmin(masked))
    return t, int(profile.phi[t])


def parity_target(s: int) -> int:
    """Largest phi_min the parity argument guarantees when s = floor(sqrt q)."""
    return -2 if s % 2 == 0 else -3


def parity_applies(s: int, q: int, k: int) -> bool:
    return k % 2 == 1 and s == math.isqrt(q)


def construct_dset(B, t: int, chi: CharacterTable) -> DSet:
    B = tuple(sorted(int(b) for b in B))
    if t in B:
        raise TIsInB(f"t = {t} lies in B")
    spec = chi.spec
    shifted = sub_array(np.asarray(B, dtype=np.int64), t, spec)
    D = tuple(sorted(int(x) for x in shifted[chi.nq_set[shifted]]))

    phi_t = int(chi.values[shifted].sum())
    r = len(D)
    if 2 * r != len(B) - phi_t:
        raise AssertionError(f"|D| = {r} but (s - phi(t))/2 = {(len(B) - phi_t) / 2}")
    if not dset_is_valid(D, chi):
        raise AssertionError(f"D = {D} is not a D-set")
    return DSet(t, D, r)


def dset_is_valid(D, chi: CharacterTable) -> bool:
    """D inside NQ and every difference of distinct elements a square."""
    D = np.asarray(D, dtype=np.int64)
    if not chi.nq_set[D].all():
        return False
    diff = sub_array(D[:, None], D[None, :], chi.spec)
    off = ~np.eye(len(D), dtype=bool)
    return bool(chi.q_set[diff[off]].all())


def verify_lemma_count(B, D: DSet, chi: CharacterTable) -> Report:
    """Enumerate b1 - b2 = z*d over distinct b1, b2 in B, d in D, z in NQ."""
    spec = chi.spec
    B = [int(b) for b in sorted(B)]
    s, r, q = len(B), D.r, spec.q
    nq = chi.nonresidues
    z_index = np.full(q, -1, dtype=np.int64)
    z_index[nq] = np.arange(len(nq))
    per_b1_z = np.zeros((s, len(nq)), dtype=np.int64)
    total = 0
    for d in D.D:
        prods = mul_array(nq, d, spec)
        for i, b1 in enumerate(B):
            for b2 in B:
                if b1 == b2:
                    continue
                hits = np.flatnonzero(prods == int(sub_array(b1, b2, spec)))
                total += len(hits)
                per_b1_z[i, hits] += 1
    rep = Report()
    rep.checks["solutions"] = (total, s * (s - 1) * r)
    rep.checks["(b1, z) with more than one (b2, d)"] = (int((per_b1_z > 1).sum()), 0)
    rep.checks["s(s-1)r > s(q-1)/2"] = (int(2 * s * (s - 1) * r > s * (q - 1)), 0)
    return rep


def sbound(r: int, q: int) -> Fraction:
    if r < 1:
        raise ZeroR("the bound needs r >= 1")
    return 1 + Fraction(q - 1, 2 * r)


def third_moment(profile: PhiProfile) -> int:
    return profile.sum_phi_cube


def write_profile_csv(profile: PhiProfile, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["t", "phi", "phi1", "in_B"])
    for t in range(profile.q):
        w.writerow([t, int(profile.phi[t]), int(profile.phi1[t]), int(profile.in_B[t])])
