"""Per-order pipeline: field -> graph -> clique -> profile -> bounds.

``analyze`` produces the cached ``ResultRow``; ``verify_order`` runs the full
invariant suite for one q and returns named pass/fail checks.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import bounds, clique, phi
from .config import DEFAULT, Config
from .errors import EmptyCache
from .ffield import CharacterTable, FieldSpec, build_character, field_for_order, is_prime, prime_power
from .paley import PaleyGraph, build_paley, verify_self_complementary, verify_srg

SCHEMA = 1


@dataclass
class ResultRow:
    q: int
    p: int
    k: int
    n: int
    s_exact: int
    trivial_bound: int
    theorem_bound: int | None
    improved: bool | None
    classification: str | None
    phi_min: int
    r_best: int
    lemma_bound: int
    third_moment: int
    nodes_explored: int
    wall_time_ms: int

    def comparable(self) -> dict:
        d = asdict(self)
        d.pop("wall_time_ms")
        return d


COLUMNS = [f.name for f in fields(ResultRow)]


@dataclass
class Analysis:
    spec: FieldSpec
    chi: CharacterTable
    graph: PaleyGraph
    result: clique.CliqueResult
    profile: phi.PhiProfile
    best_t: int
    phi_min: int
    dset: phi.DSet


def admissible_orders(lo: int, hi: int, prime_powers: bool = False, even_k: bool = False) -> list[int]:
    """Orders q in [lo, hi] with q = 1 mod 4: primes, plus odd-degree
    (``prime_powers``) or even-degree (``even_k``) prime powers on request."""
    out = []
    for q in range(max(lo, 5), hi + 1):
        if q % 4 != 1:
            continue
        if is_prime(q):
            out.append(q)
            continue
        pk = prime_power(q)
        if pk is None:
            continue
        k = pk[1]
        if (k % 2 and prime_powers) or (k % 2 == 0 and even_k):
            out.append(q)
    return out


def build_all(q: int, config: Config = DEFAULT) -> tuple[FieldSpec, CharacterTable, PaleyGraph]:
    spec = field_for_order(q, order_cap=config.order_cap)
    chi = build_character(spec)
    return spec, chi, build_paley(spec, chi)


def analyze_graph(g: PaleyGraph) -> Analysis:
    res = clique.max_clique(g)
    prof = phi.compute_phi(res.witness, g.chi)
    t, phi_min = phi.find_best_t(prof)
    dset = phi.construct_dset(res.witness, t, g.chi)
    return Analysis(g.spec, g.chi, g, res, prof, t, phi_min, dset)


def analyze(q: int, config: Config = DEFAULT) -> tuple[ResultRow, Analysis]:
    start = time.perf_counter()
    _, _, g = build_all(q, config)
    a = analyze_graph(g)
    spec, s = a.spec, a.result.s
    if spec.k % 2:
        rep = bounds.bound_report(q)
        tb, improved, cls = rep.theorem_bound, rep.improved, rep.classification
    else:
        tb = improved = cls = None
    row = ResultRow(
        q=q,
        p=spec.p,
        k=spec.k,
        n=math.isqrt(q),
        s_exact=s,
        trivial_bound=math.isqrt(q),
        theorem_bound=tb,
        improved=improved,
        classification=cls,
        phi_min=a.phi_min,
        r_best=a.dset.r,
        lemma_bound=math.floor(phi.sbound(a.dset.r, q)),
        third_moment=phi.third_moment(a.profile),
        nodes_explored=a.result.nodes_explored,
        wall_time_ms=round((time.perf_counter() - start) * 1000),
    )
    return row, a


def analyze_row(q: int) -> ResultRow:
    """Picklable worker entry point."""
    return analyze(q)[0]


# -- verification --------------------------------------------------------------


@dataclass
class Check:
    q: int
    name: str
    passed: bool | None  # None = skipped
    detail: str = ""


def _run(checks: list[Check], q: int, name: str, fn) -> None:
    try:
        out = fn()
    except Exception as exc:  # a crashing check is a failing check
        checks.append(Check(q, name, False, f"{type(exc).__name__}: {exc}"))
        return
    if isinstance(out, tuple):
        checks.append(Check(q, name, None if out[0] is None else bool(out[0]), out[1]))
    else:
        checks.append(Check(q, name, bool(out)))


def verify_order(q: int, config: Config = DEFAULT, graph: PaleyGraph | None = None) -> list[Check]:
    checks: list[Check] = []
    g = graph if graph is not None else build_all(q, config)[2]
    spec, chi = g.spec, g.chi
    odd_k = spec.k % 2 == 1
    state: dict = {}

    def srg():
        rep = verify_srg(g)
        return rep.passed, rep.counterexample or "{}, {}, {}, {}".format(*rep.params)

    def self_complement():
        z = chi.smallest_nonresidue()
        return verify_self_complementary(g, chi, z), f"z = {z}"

    def search():
        a = analyze_graph(g)
        state["a"] = a
        B = a.result.witness
        ok = clique.is_clique(B, g) and clique.is_maximal(B, g) and len(B) == a.result.s
        return ok, f"s = {a.result.s}, witness {list(B)}"

    def oracle():
        if q > config.naive_cap:
            return None, f"q > {config.naive_cap}"
        naive = clique.max_clique_naive(g, config.naive_cap)
        s = state["a"].result.s
        return naive.s == s, f"naive {naive.s}, branch-and-bound {s}"

    def trivial():
        s = state["a"].result.s
        if odd_k:
            return s * s < q, f"{s}^2 < {q}"
        sub = clique.subfield_clique(g)
        ok = s * s == q and len(sub) == s and clique.is_clique(sub, g)
        return ok, f"{s}^2 == {q}, subfield witness {list(sub)}"

    def moments():
        rep = phi.verify_moments(state["a"].profile, q)
        return rep.passed, "; ".join(rep.failures) or "all five identities"

    def pointwise():
        rep = phi.verify_pointwise(state["a"].profile, maximal=True)
        return rep.passed, "; ".join(rep.failures) or "phi = s-1 on B, parity and phi <= s-2 off B"

    def dset():
        a = state["a"]
        rep = phi.verify_lemma_count(a.result.witness, a.dset, chi)
        ok = rep.passed and phi.dset_is_valid(a.dset.D, chi)
        return ok, "; ".join(rep.failures) or f"t = {a.dset.t}, r = {a.dset.r}, count = {rep.checks['solutions'][0]}"

    def lemma_bound():
        a = state["a"]
        lb = math.floor(phi.sbound(a.dset.r, q))
        return lb >= a.result.s, f"floor(1 + (q-1)/2r) = {lb} >= s = {a.result.s}"

    def parity():
        a = state["a"]
        s = a.result.s
        if not phi.parity_applies(s, q, spec.k):
            return None, f"s = {s} != floor(sqrt q) or k even"
        target = phi.parity_target(s)
        return a.phi_min <= target, f"phi_min = {a.phi_min} <= {target}"

    def theorem():
        if not odd_k:
            return None, "even extension degree"
        rep = bounds.bound_report(q, state["a"].result.s, math.floor(phi.sbound(state["a"].dset.r, q)))
        probs = rep.problems()
        return not probs, "; ".join(probs) or f"s = {rep.s_exact} <= {rep.theorem_bound} <= {rep.n} ({rep.classification})"

    def poly():
        if spec.k != 1 or q > config.poly_cap:
            return None, "prime fields up to the interpolation cap only"
        a = state["a"]
        rep = bounds.poly_zero_check(a.result.witness, spec, a.profile.phi1)
        bad = [k for k, v in rep.checks.items() if not v]
        return rep.passed, ", ".join(bad) or f"degree {rep.degree}, lead {rep.leading_coefficient}, zeros {rep.zero_count}"

    _run(checks, q, "srg", srg)
    _run(checks, q, "self-complementary", self_complement)
    _run(checks, q, "max clique witness", search)
    if "a" in state:
        for name, fn in [
            ("naive oracle", oracle),
            ("trivial bound", trivial),
            ("moments", moments),
            ("pointwise phi", pointwise),
            ("D-set / lemma count", dset),
            ("lemma bound", lemma_bound),
            ("parity argument", parity),
            ("theorem bound", theorem),
            ("polynomial", poly),
        ]:
            _run(checks, q, name, fn)
    return checks


# -- CSV cache -----------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _parse(name: str, raw: str):
    if raw == "":
        return None
    if name == "improved":
        return raw == "true"
    if name == "classification":
        return raw
    return int(raw)


def format_rows(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    fh.write(f"# schema={SCHEMA}\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in COLUMNS])


def parse_rows(fh) -> list[ResultRow]:
    lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(lines)
    return [ResultRow(**{c: _parse(c, rec[c]) for c in COLUMNS}) for rec in reader]


def read_cache(path) -> list[ResultRow]:
    path = Path(path)
    if not path.exists():
        return []
    with path.open(encoding="utf-8", newline="") as fh:
        return parse_rows(fh)


def write_cache(path, rows) -> None:
    path = Path(path)
    rows = sorted(rows, key=lambda r: r.q)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="") as fh:
        format_rows(rows, fh)
    tmp.replace(path)


def plot_rows(rows) -> list[dict]:
    """Prime rows with a least-squares c * log(p)^2 reference column."""
    rows = sorted((r for r in rows if r.k == 1), key=lambda r: r.p)
    if not rows:
        raise EmptyCache("no prime rows in the cache")
    logs = [math.log(r.p) ** 2 for r in rows]
    c = sum(r.s_exact * L for r, L in zip(rows, logs)) / sum(L * L for L in logs)
    return [
        {
            "p": r.p,
            "s": r.s_exact,
            "sqrt_p_floor": r.n,
            "theorem_bound": r.theorem_bound,
            "c_log2": f"{c * L:.6f}",
        }
        for r, L in zip(rows, logs)
    ]
