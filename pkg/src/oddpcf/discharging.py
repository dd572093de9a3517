"""Exact-rational discharging over vertices and faces.

Initial charge: 2*deg - 6 on vertices, length - 6 on faces; by Euler's formula
the total is exactly -12 on a connected plane graph.  Two rule systems are
shipped: the girth-10 odd system (vertex rules V1-V5, face rules F1-F5, and
the remainder rule R1 feeding poor faces) and the girth-11 PCF system (V1-V3,
F1-F3 with supported/unsupported 2-thread vertices).  All transfer amounts are
computed from a frozen snapshot and then applied, so rule application order
cannot matter; every transfer lands in a replayable ledger.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .arrays import FaceClass, face_class_total
from .errors import Disconnected, PreconditionFailed, RulePreconditionFailed
from .plane_graph import PlaneGraph, VertexClass, classify_vertex, girth, is_supported

Element = tuple[str, int]           # ("vertex", id) or ("face", id)


def frac_str(x: Fraction) -> str:
    """Exact rational as "p/q" with the denominator always explicit."""
    return f"{x.numerator}/{x.denominator}"


class Stage(enum.Enum):
    MU = "mu"
    MU_PRIME = "mu_prime"
    MU_DOUBLE_PRIME = "mu_double_prime"


@dataclass(frozen=True)
class LedgerEntry:
    rule: str
    source: Element
    target: Element
    amount: Fraction


@dataclass
class ChargeState:
    stage: Stage
    charge: dict[Element, Fraction]
    ledger: list[LedgerEntry] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.charge.values(), Fraction(0))

    def of_vertex(self, v: int) -> Fraction:
        return self.charge[("vertex", v)]

    def of_face(self, f: int) -> Fraction:
        return self.charge[("face", f)]

    def negatives(self) -> list[tuple[Element, Fraction]]:
        return sorted((e, c) for e, c in self.charge.items() if c < 0)

    def _applied(self, stage: Stage, transfers: list[LedgerEntry]) -> "ChargeState":
        charge = dict(self.charge)
        for t in transfers:
            charge[t.source] -= t.amount
            charge[t.target] += t.amount
        return ChargeState(stage, charge, self.ledger + transfers)


def initial_charge(g: PlaneGraph) -> ChargeState:
    """mu: 2 deg - 6 on vertices, length - 6 on faces; total -12."""
    if not g.is_connected:
        raise Disconnected("initial charge requires a connected graph")
    charge: dict[Element, Fraction] = {}
    for v in range(g.vertex_count):
        charge[("vertex", v)] = Fraction(2 * g.degree(v) - 6)
    for f in g.faces:
        charge[("face", f.id)] = Fraction(f.length - 6)
    return ChargeState(Stage.MU, charge)


# ---------------------------------------------------------------------------
# Odd rule system (girth 10): V1-V5, F1-F5, R1
# ---------------------------------------------------------------------------

V1, V2, V3 = Fraction(5, 6), Fraction(2, 3), Fraction(1, 3)
V4, V5 = Fraction(1, 5), Fraction(1, 10)
F_GOOD, F_BAD, F_WORST = Fraction(2, 3), Fraction(11, 15), Fraction(4, 5)
F_2THREAD, F_3END, F_3MID = Fraction(2, 3), Fraction(7, 12), Fraction(1)


def _require_stage(state: ChargeState, stage: Stage):
    if state.stage is not stage:
        raise RulePreconditionFailed(f"rules expect stage {stage.value}, got {state.stage.value}")


def _vertex_transfers_odd(g: PlaneGraph) -> list[LedgerEntry]:
    out = []
    for v in range(g.vertex_count):
        if g.degree(v) < 4:
            continue
        src = ("vertex", v)
        for x in g.neighbors[v]:
            if g.degree(x) == 2:
                t = g.thread_of.get(x)
                if t is None or not t.anchored_by(v) or x not in t.endpoints:
                    continue
                if t.kind == 3:
                    out.append(LedgerEntry("V1", src, ("vertex", x), V1))
                elif t.kind == 2:
                    out.append(LedgerEntry("V2", src, ("vertex", x), V2))
                elif t.kind == 1:
                    out.append(LedgerEntry("V3", src, ("vertex", x), V3))
            elif g.degree(x) == 3:
                cls = classify_vertex(g, x)
                if cls in (VertexClass.THREE_WORST, VertexClass.THREE_BAD):
                    for z in g.neighbors[x]:
                        if g.degree(z) == 2:
                            out.append(LedgerEntry("V4", src, ("vertex", z), V4))
                elif cls is VertexClass.THREE_SBAD:
                    for z in g.neighbors[x]:
                        if g.degree(z) == 2:
                            out.append(LedgerEntry("V5", src, ("vertex", z), V5))
    return out


def _face_payment_odd(g: PlaneGraph, v: int) -> tuple[str, Fraction] | None:
    if g.degree(v) != 2:
        return None
    t = g.thread_of.get(v)
    if t is None:
        return None
    if t.kind == 1:
        cls = classify_vertex(g, v)
        return {VertexClass.TWO_GOOD: ("F1", F_GOOD),
                VertexClass.TWO_BAD: ("F2", F_BAD),
                VertexClass.TWO_WORST: ("F3", F_WORST)}.get(cls)
    if t.kind == 2:
        return ("F4", F_2THREAD)
    if t.kind == 3:
        return ("F5", F_3END if v in t.endpoints else F_3MID)
    return None


def _face_transfers(g: PlaneGraph, payment) -> list[LedgerEntry]:
    # one payment per boundary occurrence; a 2-vertex has exactly two of them
    out = []
    for f in g.faces:
        src = ("face", f.id)
        for v in f.vertices:
            pay = payment(g, v)
            if pay is not None:
                out.append(LedgerEntry(pay[0], src, ("vertex", v), pay[1]))
    return out


def poor_face_ids(g: PlaneGraph) -> frozenset[int]:
    return frozenset(f.id for f in g.faces
                     if face_class_total(g, f) is FaceClass.POOR)


def incident_poor_count(g: PlaneGraph, v: int, poor: frozenset[int]) -> int:
    """p(v): distinct poor faces incident to v (multiplicity ignored)."""
    seen = set()
    for f in g.faces:
        if f.id in poor and v in f.vertices:
            seen.add(f.id)
    return len(seen)


def _check_strict(g: PlaneGraph):
    from .arrays import parse_arrays
    for f in g.faces:
        if not parse_arrays(f.degree_walk):
            raise RulePreconditionFailed(f"face {f.id} has no array representation")


def apply_odd_prime(g: PlaneGraph, state: ChargeState, strict: bool = False) -> ChargeState:
    """V1-V5 and F1-F5 only: the mu' stage."""
    _require_stage(state, Stage.MU)
    if strict:
        _check_strict(g)
    transfers = _vertex_transfers_odd(g) + _face_transfers(g, _face_payment_odd)
    return state._applied(Stage.MU_PRIME, transfers)


def apply_r1(g: PlaneGraph, prime: ChargeState) -> ChargeState:
    """R1: every 4+-vertex splits its remaining charge over incident poor faces."""
    _require_stage(prime, Stage.MU_PRIME)
    poor = poor_face_ids(g)
    incidences: dict[int, set[int]] = {}
    for f in g.faces:
        if f.id in poor:
            for v in set(f.vertices):
                if g.degree(v) >= 4:
                    incidences.setdefault(v, set()).add(f.id)
    r1 = []
    for v, fids in sorted(incidences.items()):
        eta = prime.of_vertex(v) / len(fids)
        for fid in sorted(fids):
            r1.append(LedgerEntry("R1", ("vertex", v), ("face", fid), eta))
    return prime._applied(Stage.MU_DOUBLE_PRIME, r1)


def apply_odd_rules(g: PlaneGraph, state: ChargeState, strict: bool = False) -> ChargeState:
    """Run V1-V5 and F1-F5 producing mu', then R1 producing mu''.

    With strict=True, a face without an array representation raises
    RulePreconditionFailed; by default the rules are total and an
    unclassifiable element simply receives nothing.
    """
    return apply_r1(g, apply_odd_prime(g, state, strict))


def eta(g: PlaneGraph, prime: ChargeState, v: int) -> Fraction | None:
    """R1 per-face transfer mu'(v) / p(v); None when v touches no poor face."""
    poor = poor_face_ids(g)
    p = incident_poor_count(g, v, poor)
    if p == 0:
        return None
    return prime.of_vertex(v) / p


# ---------------------------------------------------------------------------
# PCF rule system (girth 11): V1-V3, F1-F3
# ---------------------------------------------------------------------------

PV1, PV2, PV3 = Fraction(1), Fraction(1), Fraction(1, 2)
PF_1THREAD = Fraction(1)
PF_SUPP, PF_UNSUPP = Fraction(1, 2), Fraction(3, 4)
PF_3END, PF_3MID = Fraction(1, 2), Fraction(1)


def _vertex_transfers_pcf(g: PlaneGraph) -> list[LedgerEntry]:
    out = []
    for v in range(g.vertex_count):
        if g.degree(v) < 4:
            continue
        src = ("vertex", v)
        for x in g.neighbors[v]:
            if g.degree(x) != 2:
                continue
            t = g.thread_of.get(x)
            if t is None or not t.anchored_by(v) or x not in t.endpoints:
                continue
            if t.kind == 3:
                out.append(LedgerEntry("V1", src, ("vertex", x), PV1))
            elif t.kind == 2:
                if is_supported(g, x):
                    out.append(LedgerEntry("V2", src, ("vertex", x), PV2))
                else:
                    out.append(LedgerEntry("V3", src, ("vertex", x), PV3))
    return out


def _face_payment_pcf(g: PlaneGraph, v: int) -> tuple[str, Fraction] | None:
    if g.degree(v) != 2:
        return None
    t = g.thread_of.get(v)
    if t is None:
        return None
    if t.kind == 1:
        return ("F1", PF_1THREAD)
    if t.kind == 2:
        return ("F2", PF_SUPP if is_supported(g, v) else PF_UNSUPP)
    if t.kind == 3:
        return ("F3", PF_3END if v in t.endpoints else PF_3MID)
    return None


def apply_pcf_rules(g: PlaneGraph, state: ChargeState, strict: bool = False) -> ChargeState:
    """Run the PCF vertex and face rules, producing mu' (the final stage)."""
    _require_stage(state, Stage.MU)
    if strict:
        _check_strict(g)
    transfers = _vertex_transfers_pcf(g) + _face_transfers(g, _face_payment_pcf)
    return state._applied(Stage.MU_PRIME, transfers)


# ---------------------------------------------------------------------------
# Audit
# ---------------------------------------------------------------------------

@dataclass
class AuditReport:
    theorem: str
    applicable: bool
    reason: str = ""
    totals: dict[str, Fraction] = field(default_factory=dict)
    negatives: list[tuple[Element, Fraction]] = field(default_factory=list)
    critical: list[Element] = field(default_factory=list)
    checklist: dict[str, bool] = field(default_factory=dict)
    hit_count: int = 0
    final: ChargeState | None = None

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "theorem": self.theorem,
            "applicable": self.applicable,
            "reason": self.reason,
            "totals": {k: frac_str(v) for k, v in self.totals.items()},
            "negatives": [{"element": list(e), "charge": frac_str(c)}
                          for e, c in self.negatives],
            "critical": [list(e) for e in self.critical],
            "checklist": self.checklist,
            "hits": self.hit_count,
        }


def audit(g: PlaneGraph, theorem: str) -> AuditReport:
    """Full discharging audit: conservation, final negatives, cross-check.

    A negative final element on a graph where the reducible detectors find no
    configuration at all would contradict the total of -12; such elements are
    flagged critical.
    """
    from .reducible import detect_all

    if theorem not in ("odd10", "pcf11"):
        raise PreconditionFailed(f"unknown theorem {theorem!r}")
    if not g.is_connected:
        raise Disconnected("audit requires a connected graph")
    need = 10 if theorem == "odd10" else 11
    gv = girth(g)
    if gv is None or gv < need:
        raise PreconditionFailed(f"{theorem} audit requires girth >= {need}, got {gv}")

    mu = initial_charge(g)
    report = AuditReport(theorem=theorem, applicable=True)
    report.totals["mu"] = mu.total()

    if all(g.degree(v) == 2 for v in range(g.vertex_count)):
        report.applicable = False
        report.reason = "no 3+-vertices: thread taxonomy and rules do not apply"
        return report

    if theorem == "odd10":
        prime = apply_odd_prime(g, mu)
        final = apply_r1(g, prime)
        report.totals["mu_prime"] = prime.total()
        report.totals["mu_double_prime"] = final.total()
        poor = poor_face_ids(g)
        report.checklist["vertices_nonnegative"] = all(
            final.of_vertex(v) >= 0 for v in range(g.vertex_count))
        report.checklist["rich_faces_nonnegative"] = all(
            final.of_face(f.id) >= 0 for f in g.faces if f.id not in poor)
        report.checklist["poor_faces_nonnegative"] = all(
            final.of_face(f.id) >= 0 for f in g.faces if f.id in poor)
    else:
        final = apply_pcf_rules(g, mu)
        report.totals["mu_prime"] = final.total()
        report.checklist["vertices_nonnegative"] = all(
            final.of_vertex(v) >= 0 for v in range(g.vertex_count))
        report.checklist["faces_nonnegative"] = all(
            final.of_face(f.id) >= 0 for f in g.faces)

    report.final = final
    report.negatives = final.negatives()
    hits = detect_all(g, theorem)
    report.hit_count = len(hits)
    if report.negatives and not hits:
        report.critical = [e for e, _ in report.negatives]
    return report


def ledger_csv(state: ChargeState) -> str:
    lines = ["rule,source_kind,source_id,target_kind,target_id,amount"]
    for t in sorted(state.ledger, key=lambda t: (t.rule, t.source, t.target)):
        lines.append(f"{t.rule},{t.source[0]},{t.source[1]},"
                     f"{t.target[0]},{t.target[1]},{t.amount}")
    return "\n".join(lines) + "\n"
