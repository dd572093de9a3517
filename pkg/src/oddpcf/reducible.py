"""Reducible-configuration detectors and a best-effort constructive colorer.

Each detector recognizes one structure that cannot occur in a minimum
counterexample of the corresponding girth theorem; any hit therefore
certifies "not a minimum counterexample".  Detectors are purely structural.
peel_color composes the constructive procedures (greedy extension over a
deletion set, thread extension) and falls back to the exact solver when no
procedure applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .arrays import ArraySymbol, parse_arrays
from .coloring import (
    PartialColoring,
    extend_over_2thread,
    extend_over_3thread,
    is_odd_coloring,
    is_pcf_coloring,
)
from .errors import CannotExtend, Incomplete, PreconditionFailed, Stuck, Untypeable
from .forbflex import deletion_set, flex_number, forb_number, greedy_extend, inequality_check
from .plane_graph import PlaneGraph, delete_vertices, girth, is_cut_vertex
from .solver import find_coloring


@dataclass(frozen=True)
class ConfigurationHit:
    kind: str
    witness: dict
    theorem: str                  # "odd10", "pcf11" or "both"

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": self.witness, "theorem": self.theorem}


# ---------------------------------------------------------------------------
# Individual detectors; each returns a list of hits
# ---------------------------------------------------------------------------

def _d_one_vertex(g: PlaneGraph, theorem: str):
    return [ConfigurationHit("one_vertex", {"vertex": v}, "both")
            for v in range(g.vertex_count) if g.degree(v) == 1]


def _d_long_thread(g: PlaneGraph, theorem: str):
    return [ConfigurationHit("long_thread", {"interior": list(t.interior)}, "both")
            for t in g.threads if t.kind >= 4]


def _d_odd_anchor(g: PlaneGraph, theorem: str):
    hits = []
    for t in g.threads:
        if t.kind < 2:
            continue
        for a in set(t.anchors):
            if g.degree(a) % 2 == 1:
                hits.append(ConfigurationHit(
                    "odd_anchor_of_long_thread",
                    {"anchor": a, "interior": list(t.interior)}, "odd10"))
    return hits


def _d_anchor_load(g: PlaneGraph, theorem: str):
    hits = []
    for v in range(g.vertex_count):
        deg = g.degree(v)
        if deg < 4:
            continue
        load = sum(t.kind for t in g.threads_at(v))
        bound = deg if deg % 2 == 1 else 3 * deg - 5
        if load > bound:
            hits.append(ConfigurationHit(
                "anchor_thread_load", {"vertex": v, "load": load, "bound": bound},
                "odd10"))
    return hits


def _d_cut_two_vertex(g: PlaneGraph, theorem: str):
    return [ConfigurationHit("cut_two_vertex", {"vertex": v}, "odd10")
            for v in range(g.vertex_count)
            if g.degree(v) == 2 and is_cut_vertex(g, v)]


def _d_three_vertex_no_even(g: PlaneGraph, theorem: str):
    hits = []
    for v in range(g.vertex_count):
        if g.degree(v) != 3:
            continue
        if not any(g.degree(w) >= 4 and g.degree(w) % 2 == 0 for w in g.neighbors[v]):
            hits.append(ConfigurationHit(
                "three_vertex_without_even_four_neighbor", {"vertex": v}, "odd10"))
    return hits


def _d_path_odd_2x2(g: PlaneGraph, theorem: str):
    hits = []
    for v2 in range(g.vertex_count):
        if g.degree(v2) != 2:
            continue
        for v1 in g.neighbors[v2]:
            if g.degree(v1) % 2 != 1:
                continue
            v3 = next(w for w in g.neighbors[v2] if w != v1)
            for v4 in g.neighbors[v3]:
                if v4 == v2 or g.degree(v4) != 2:
                    continue
                for v5 in g.neighbors[v4]:
                    if v5 != v3 and g.degree(v5) == 2:
                        hits.append(ConfigurationHit(
                            "path_odd_then_two_twos",
                            {"path": [v1, v2, v3, v4, v5]}, "odd10"))
    return hits


def _d_a2bad_adjacency(g: PlaneGraph, theorem: str):
    hits = []
    bad_pairs = {(ArraySymbol.A2_BAD, ArraySymbol.A3), (ArraySymbol.A3, ArraySymbol.A2_BAD),
                 (ArraySymbol.A2_BAD, ArraySymbol.A4), (ArraySymbol.A4, ArraySymbol.A2_BAD)}
    for f in g.faces:
        for rep in parse_arrays(f.degree_walk):
            syms = rep.symbols
            if any((syms[i], syms[(i + 1) % len(syms)]) in bad_pairs
                   for i in range(len(syms))):
                hits.append(ConfigurationHit(
                    "a2bad_beside_a3_or_a4",
                    {"face": f.id, "representation": rep.render()}, "odd10"))
                break
    return hits


def _d_a4_without_a1_a2(g: PlaneGraph, theorem: str):
    a2s = {ArraySymbol.A2_WORST, ArraySymbol.A2_BAD, ArraySymbol.A2_GOOD}
    hits = []
    for f in g.faces:
        for rep in parse_arrays(f.degree_walk):
            syms = set(rep.symbols)
            if ArraySymbol.A4 in syms and ArraySymbol.A1 not in syms and not (syms & a2s):
                hits.append(ConfigurationHit(
                    "a4_without_a1_or_a2",
                    {"face": f.id, "representation": rep.render()}, "odd10"))
                break
    return hits


def _match_cyclic(walk, pattern_checks) -> bool:
    n = len(walk)
    if n != len(pattern_checks):
        return False
    for view in (walk, list(reversed(walk))):
        for s in range(n):
            if all(pattern_checks[i](view[(s + i) % n]) for i in range(n)):
                return True
    return False


def _d_ten_face_pattern(g: PlaneGraph, theorem: str):
    # degree pattern 3+, 2, 2+, 2, 3+, 2, 3+, 2, 2, 2 around a 10-face
    checks = [lambda d: d >= 3, lambda d: d == 2, lambda d: d >= 2, lambda d: d == 2,
              lambda d: d >= 3, lambda d: d == 2, lambda d: d >= 3, lambda d: d == 2,
              lambda d: d == 2, lambda d: d == 2]
    hits = []
    for f in g.faces:
        if f.length == 10 and _match_cyclic(list(f.degree_walk), checks):
            hits.append(ConfigurationHit(
                "ten_face_alternating_pattern", {"face": f.id,
                                                 "walk": list(f.degree_walk)}, "odd10"))
    return hits


def _d_a4_a2good(g: PlaneGraph, theorem: str):
    targets = (tuple(sorted(["a4", "a2g", "a2g", "a2g"])),
               tuple(sorted(["a4", "a4", "a2g"])))
    hits = []
    for f in g.faces:
        for rep in parse_arrays(f.degree_walk):
            if rep.multiset in targets:
                hits.append(ConfigurationHit(
                    "a4_with_good_a2_pattern",
                    {"face": f.id, "representation": rep.render()}, "odd10"))
                break
    return hits


def _d_inequalities(g: PlaneGraph, theorem: str):
    return [ConfigurationHit(v.lemma, {"vertices": list(v.vertices), "detail": v.detail},
                             "odd10")
            for v in inequality_check(g)]


# PCF-specific detectors

def _d_three_anchor_long(g: PlaneGraph, theorem: str):
    hits = []
    for t in g.threads:
        if t.kind < 2:
            continue
        for a in set(t.anchors):
            if g.degree(a) == 3:
                hits.append(ConfigurationHit(
                    "three_vertex_anchoring_long_thread",
                    {"anchor": a, "interior": list(t.interior)}, "pcf11"))
    return hits


def _two_plus_threads_at(g: PlaneGraph, v: int) -> int:
    return sum(1 for t in g.threads_at(v) if t.kind >= 2)


def _n_three_plus(g: PlaneGraph, v: int) -> int:
    return sum(1 for w in g.neighbors[v] if g.degree(w) >= 3)


def _d_pcf_four_vertex_quota(g: PlaneGraph, theorem: str):
    hits = []
    for v in range(g.vertex_count):
        if g.degree(v) != 4:
            continue
        if not any(t.kind == 3 for t in g.threads_at(v)):
            continue
        if _two_plus_threads_at(g, v) > 1 + _n_three_plus(g, v):
            hits.append(ConfigurationHit(
                "four_vertex_thread_quota",
                {"vertex": v, "two_plus_threads": _two_plus_threads_at(g, v),
                 "bound": 1 + _n_three_plus(g, v)}, "pcf11"))
    return hits


def _d_pcf_five_vertex_quota(g: PlaneGraph, theorem: str):
    hits = []
    for v in range(g.vertex_count):
        if g.degree(v) != 5:
            continue
        if not any(t.kind == 3 for t in g.threads_at(v)):
            continue
        if _two_plus_threads_at(g, v) > 4 + _n_three_plus(g, v):
            hits.append(ConfigurationHit(
                "five_vertex_thread_quota",
                {"vertex": v, "two_plus_threads": _two_plus_threads_at(g, v),
                 "bound": 4 + _n_three_plus(g, v)}, "pcf11"))
    return hits


def _d_pcf_three_t2_one_t1(g: PlaneGraph, theorem: str):
    hits = []
    for v in range(g.vertex_count):
        if g.degree(v) != 4:
            continue
        kinds = sorted(t.kind for t in g.threads_at(v)
                       for _ in range(2 if t.anchors == (v, v) else 1))
        if kinds == [1, 2, 2, 2]:
            hits.append(ConfigurationHit(
                "four_vertex_three_t2_one_t1", {"vertex": v}, "pcf11"))
    return hits


_ODD_DETECTORS: list[Callable] = [
    _d_one_vertex, _d_long_thread, _d_odd_anchor, _d_anchor_load,
    _d_cut_two_vertex, _d_three_vertex_no_even, _d_path_odd_2x2,
    _d_a2bad_adjacency, _d_a4_without_a1_a2, _d_ten_face_pattern,
    _d_a4_a2good, _d_inequalities,
]

_PCF_DETECTORS: list[Callable] = [
    _d_one_vertex, _d_three_anchor_long, _d_long_thread,
    _d_pcf_four_vertex_quota, _d_pcf_five_vertex_quota, _d_pcf_three_t2_one_t1,
]


def detect_all(g: PlaneGraph, theorem: str) -> list[ConfigurationHit]:
    """All reducible-configuration hits for the given theorem."""
    if theorem == "odd10":
        detectors = _ODD_DETECTORS
    elif theorem == "pcf11":
        detectors = _PCF_DETECTORS
    else:
        raise PreconditionFailed(f"unknown theorem {theorem!r}")
    hits = []
    for det in detectors:
        hits.extend(det(g, theorem))
    return hits


def revalidate(g: PlaneGraph, hit: ConfigurationHit) -> bool:
    """Re-run the hit's detector and confirm the same witness appears."""
    for det in _ODD_DETECTORS + _PCF_DETECTORS:
        for other in det(g, hit.theorem if hit.theorem != "both" else "odd10"):
            if other.kind == hit.kind and other.witness == hit.witness:
                return True
    return False


# ---------------------------------------------------------------------------
# Constructive coloring
# ---------------------------------------------------------------------------

@dataclass
class PeelTrace:
    steps: list[dict] = field(default_factory=list)

    @property
    def used_fallback(self) -> bool:
        """True when the exact solver stood in for a failed or missing
        procedure; the small base case of the recursion does not count."""
        return any(s["procedure"] == "exact" and s.get("scope") != "base"
                   for s in self.steps)


_EXACT_BASE = 10


def peel_color(g: PlaneGraph, theorem: str, allow_fallback: bool = True,
               trace: PeelTrace | None = None) -> PartialColoring:
    """Best-effort constructive 4-coloring driven by the reduction procedures.

    Repeatedly removes a deletion set or thread interior, colors the smaller
    graph recursively, and extends back with the constructive procedure.  A
    step that cannot extend constructively re-solves exactly (unless fallback
    is disabled, in which case Incomplete is raised).  The returned coloring
    always passes the corresponding checker.
    """
    need = 10 if theorem == "odd10" else 11
    gv = girth(g)
    if gv is not None and gv < need:
        raise PreconditionFailed(f"{theorem} requires girth >= {need}, got {gv}")
    if trace is None:
        trace = PeelTrace()
    mode = "odd" if theorem == "odd10" else "pcf"
    phi = _peel(g, mode, allow_fallback, trace)
    check = (is_odd_coloring if mode == "odd" else is_pcf_coloring)(g, phi)
    if not check:
        raise Incomplete(f"peeled coloring fails at vertex {check.failing_vertex}")
    return phi


def _exact(g: PlaneGraph, mode: str, allow_fallback: bool, trace: PeelTrace,
           label: str) -> PartialColoring:
    if not allow_fallback:
        raise Incomplete("no constructive procedure applies and fallback is disabled")
    phi = find_coloring(g, 4, mode)
    if phi is None:
        raise Incomplete("exact fallback found no 4-coloring")
    trace.steps.append({"procedure": "exact", "scope": label,
                        "vertices": g.vertex_count})
    return phi


def _lift(sub_phi: PartialColoring, new_to_old: list[int]) -> dict[int, int]:
    return {new_to_old[v]: c for v, c in sub_phi.as_dict().items()}


def _peel(g: PlaneGraph, mode: str, allow_fallback: bool,
          trace: PeelTrace) -> PartialColoring:
    if g.vertex_count == 0:
        return PartialColoring({}, k=4)
    if len(g.components) > 1:
        merged: dict[int, int] = {}
        for comp in g.components:
            sub, new_to_old = delete_vertices(
                g, set(range(g.vertex_count)) - comp)
            sub_phi = _peel(sub, mode, allow_fallback, trace)
            merged.update(_lift(sub_phi, new_to_old))
        return PartialColoring(merged, k=4)
    cyc = _cycle_coloring(g, trace)
    if cyc is not None:
        return cyc
    if g.vertex_count <= _EXACT_BASE:
        return _exact(g, mode, allow_fallback, trace, "base")

    if mode == "odd":
        # greedy peel at a vertex whose flexibility strictly beats its scores
        for u in _greedy_candidates(g)[:3]:
            s = deletion_set(g, u)
            if len(s.vertices) >= g.vertex_count:
                continue
            sub, new_to_old = delete_vertices(g, s.vertices)
            sub_phi = _peel(sub, mode, allow_fallback, trace)
            phi = PartialColoring(_lift(sub_phi, new_to_old), k=4)
            try:
                full = greedy_extend(g, u, phi)
            except (Stuck, PreconditionFailed):
                continue
            trace.steps.append({"procedure": "greedy_extend", "vertex": u})
            return full

        # thread peel: remove a 2-/3-thread interior and extend constructively
        for t in sorted(g.threads, key=lambda t: (-t.kind, t.interior)):
            if t.kind not in (2, 3) or t.anchors[0] == t.anchors[1]:
                continue
            sub, new_to_old = delete_vertices(g, t.interior)
            if not _anchors_alive(g, t, sub, new_to_old):
                continue
            sub_phi = _peel(sub, mode, allow_fallback, trace)
            phi = PartialColoring(_lift(sub_phi, new_to_old), k=4)
            extend = extend_over_2thread if t.kind == 2 else extend_over_3thread
            try:
                full = extend(g, phi, t)
            except CannotExtend:
                return _exact(g, mode, allow_fallback, trace, "blocked-thread")
            trace.steps.append({"procedure": f"extend_{t.kind}thread",
                                "interior": list(t.interior)})
            return full

    return _exact(g, mode, allow_fallback, trace, "no-procedure")


def _cycle_coloring(g: PlaneGraph, trace: PeelTrace) -> PartialColoring | None:
    """Greedy coloring of a single bare cycle (connected, 2-regular, n >= 6).

    Concatenated blocks 1,2,3 and 1,2,3,4 keep adjacent and distance-2
    vertices apart, which is proper + odd + PCF on a cycle.
    """
    n = g.vertex_count
    if n < 6 or any(g.degree(v) != 2 for v in range(n)):
        return None
    order = [0, g.neighbors[0][0]]
    while len(order) < n:
        order.append(next(w for w in g.neighbors[order[-1]] if w != order[-2]))
    y = n % 3                       # n = 3x + 4y
    blocks = [4] * y + [3] * ((n - 4 * y) // 3)
    colors = []
    for b in blocks:
        colors.extend(range(1, b + 1))
    trace.steps.append({"procedure": "cycle", "length": n})
    return PartialColoring(dict(zip(order, colors)), k=4)


def _greedy_candidates(g: PlaneGraph):
    out = []
    for u in range(g.vertex_count):
        if g.degree(u) < 3:
            continue
        try:
            if flex_number(g, u) > forb_number(g, u):
                out.append(u)
        except Untypeable:
            continue
    return out


def _anchors_alive(g, t, sub, new_to_old) -> bool:
    # extension needs both anchors non-isolated after the interior is removed
    old_to_new = {old: i for i, old in enumerate(new_to_old)}
    return all(sub.degree(old_to_new[a]) >= 1 for a in set(t.anchors))
