"""Forbidden/flexible machinery for greedy 4-coloring around a vertex.

Each neighbor of a vertex u falls into one of nine types and contributes a
score of 0, 1 or 2; the score sum bounds from above how many colors u's
neighborhood can forbid.  Threads anchored at u that admit two interior
colorings differing next to u are "flexible" and let us repair u's odd color
after the fact.  greedy_extend combines both: when the concrete flexible set
is larger than the concrete forbidden set, an odd 4-coloring of the graph
minus the deletion set S[u] always extends to the whole graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .coloring import (
    PartialColoring,
    is_odd_coloring,
    is_odd_coloring_excluding,
    odd_colors,
)
from .errors import NotFlexible, PreconditionFailed, Stuck, Untypeable
from .plane_graph import PlaneGraph, Thread, VertexClass, classify_vertex, girth


class NeighborType(enum.Enum):
    T1 = "t1"
    T2 = "t2"
    T3 = "t3"
    T_GOOD = "t_good"
    T_SBAD = "t_sbad"
    T_BAD = "t_bad"
    T_WORST = "t_worst"
    T_EVEN = "t_even"
    T_ODD = "t_odd"


_SCORE = {
    NeighborType.T2: 0, NeighborType.T3: 0, NeighborType.T_WORST: 0,
    NeighborType.T1: 1, NeighborType.T_GOOD: 1, NeighborType.T_SBAD: 1,
    NeighborType.T_BAD: 1, NeighborType.T_ODD: 1,
    NeighborType.T_EVEN: 2,
}

_THREE_CLASS_TYPE = {
    VertexClass.THREE_GOOD: NeighborType.T_GOOD,
    VertexClass.THREE_SBAD: NeighborType.T_SBAD,
    VertexClass.THREE_BAD: NeighborType.T_BAD,
    VertexClass.THREE_WORST: NeighborType.T_WORST,
}


def _typing_guard(g: PlaneGraph):
    if any(g.degree(v) == 1 for v in range(g.vertex_count)):
        raise Untypeable("graph has a 1-vertex")
    if any(t.kind >= 4 for t in g.threads):
        raise Untypeable("graph has a 4+-thread")


def neighbor_type(g: PlaneGraph, u: int, v: int) -> NeighborType:
    """The unique type of v as a neighbor of u."""
    if v not in g.neighbors[u]:
        raise PreconditionFailed(f"{u} and {v} are not adjacent")
    _typing_guard(g)
    deg = g.degree(v)
    if deg == 2:
        if g.degree(u) < 3:
            raise Untypeable(f"base vertex {u} is not a thread anchor")
        t = g.thread_of.get(v)
        if t is None:
            raise Untypeable(f"vertex {v} lies on a 2-regular cycle, not a thread")
        return {1: NeighborType.T1, 2: NeighborType.T2, 3: NeighborType.T3}[t.kind]
    if deg == 3:
        cls = classify_vertex(g, v)
        if cls in _THREE_CLASS_TYPE:
            return _THREE_CLASS_TYPE[cls]
        raise Untypeable(
            f"3-vertex {v} with one 2-neighbor and two 3-neighbors has no class")
    return NeighborType.T_EVEN if deg % 2 == 0 else NeighborType.T_ODD


def score(g: PlaneGraph, u: int, v: int) -> int:
    """0 for t2/t3/t_worst, 1 for t1/3-classes/t_odd, 2 for t_even."""
    return _SCORE[neighbor_type(g, u, v)]


def forb_number(g: PlaneGraph, u: int) -> int:
    """Sum of neighbor scores: upper bound on forbidden colors for u."""
    return sum(score(g, u, v) for v in g.neighbors[u])


def flex_number(g: PlaneGraph, u: int) -> int:
    """Largest thread kind among u's t_k-neighbors, 0 when u anchors none.

    Threads with both anchors equal to u are excluded: flexibility requires
    a distinct far anchor, and such threads cannot occur at girth >= 10.
    """
    kinds = [t.kind for t in g.threads_at(u)
             if t.kind <= 3 and t.anchors[0] != t.anchors[1]]
    return max(kinds, default=0)


@dataclass(frozen=True)
class DeletionSet:
    """S[u]: u, interiors of threads anchored by u, closed neighborhoods of
    u's worst-3-vertex neighbors."""

    u: int
    vertices: frozenset[int]

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


def deletion_set(g: PlaneGraph, u: int) -> DeletionSet:
    s = {u}
    for t in g.threads_at(u):
        s.update(t.interior)
    for v in g.neighbors[u]:
        if g.degree(v) == 3 and classify_vertex(g, v) is VertexClass.THREE_WORST:
            s.add(v)
            s.update(g.neighbors[v])
    return DeletionSet(u, frozenset(s))


@dataclass
class FlexReport:
    """Per-vertex summary: neighbor types, scores, forb/flex numbers and,
    when a coloring is supplied, the concrete Forb/Flex color sets."""

    vertex: int
    types: dict[int, str]
    scores: dict[int, int]
    forb: int
    flex: int
    forb_set: list[int] | None = None
    flex_set: list[int] | None = None

    def to_json(self) -> dict:
        out = {"vertex": self.vertex, "types": self.types, "scores": self.scores,
               "forb": self.forb, "flex": self.flex}
        if self.forb_set is not None:
            out["forb_set"] = self.forb_set
        if self.flex_set is not None:
            out["flex_set"] = self.flex_set
        return out


def flex_report(g: PlaneGraph, u: int, phi: PartialColoring | None = None) -> FlexReport:
    types = {v: neighbor_type(g, u, v).value for v in g.neighbors[u]}
    scores = {v: score(g, u, v) for v in g.neighbors[u]}
    rep = FlexReport(u, types, scores, sum(scores.values()), flex_number(g, u))
    if phi is not None:
        rep.forb_set = sorted(forb_set(g, u, phi))
        rep.flex_set = sorted(flex_set(g, u, phi))
    return rep


# ---------------------------------------------------------------------------
# Flexible threads
# ---------------------------------------------------------------------------

def _flex_witnesses(g: PlaneGraph, phi: PartialColoring, thread: Thread,
                    u: int) -> tuple[set[int], int] | None:
    """Candidate odd colors of the far anchor, or None when the definition's
    side conditions fail (far anchor uncolored, no odd color, or the only odd
    color equals the color of the far endpoint)."""
    if not thread.anchored_by(u):
        return None
    interior, w = thread.oriented_from(u)
    if w == u or w not in phi:
        return None
    odds = odd_colors(g, phi, w)
    vk = interior[-1]
    if vk in phi:
        odds = odds - {phi[vk]}
    if not odds:
        return None
    return odds, w


def is_flexible(g: PlaneGraph, thread: Thread, u: int, phi: PartialColoring) -> bool:
    """Whether the thread admits two interior colorings differing next to u.

    Existential over the far anchor's odd colors.  Raises PreconditionFailed
    when the definition's hypotheses do not hold.
    """
    if not thread.anchored_by(u):
        raise PreconditionFailed(f"vertex {u} does not anchor the thread")
    interior, w = thread.oriented_from(u)
    if w == u:
        raise PreconditionFailed("thread anchors must be distinct")
    if u not in phi:
        raise PreconditionFailed("phi does not assign the near anchor")
    if w not in phi:
        raise PreconditionFailed("phi does not assign the far anchor")
    if not odd_colors(g, phi, w):
        raise PreconditionFailed("far anchor has no odd color")
    witnesses = _flex_witnesses(g, phi, thread, u)
    if witnesses is None:
        raise PreconditionFailed(
            "far anchor's only odd color equals the far endpoint's color")
    odds, _ = witnesses
    return _kind_condition(thread.kind, phi[u], phi[w], odds)


def _kind_condition(kind: int, cu: int, cw: int, odds: set[int]) -> bool:
    if kind == 1:
        return cu in odds
    if kind == 2:
        return cu == cw or cu in odds
    if kind == 3:
        return odds != {cu}
    return False


def _flexible_quiet(g, phi, thread, u) -> bool:
    wit = _flex_witnesses(g, phi, thread, u)
    if wit is None or u not in phi:
        return False
    odds, w = wit
    return _kind_condition(thread.kind, phi[u], phi[w], odds)


def flex_set(g: PlaneGraph, u: int, phi: PartialColoring) -> set[int]:
    """Colors for u under which some thread anchored at u becomes flexible."""
    out = set()
    for alpha in range(1, phi.k + 1):
        for t in g.threads_at(u):
            if t.kind > 3:
                continue
            wit = _flex_witnesses(g, phi, t, u)
            if wit is None:
                continue
            odds, w = wit
            if _kind_condition(t.kind, alpha, phi[w], odds):
                out.add(alpha)
                break
    return out


def forb_set(g: PlaneGraph, u: int, phi: PartialColoring,
             skip_multi_odd: bool = False) -> set[int]:
    """Concrete forbidden colors for u: neighbor colors, designated odd colors
    of even neighbors anchoring no flexible thread, and 1-thread co-anchor
    colors.

    ``skip_multi_odd`` drops the odd-color term for even neighbors with two or
    more odd colors (safe: coloring u removes at most one of them); off by
    default to stay with the literal definition.
    """
    out = set()
    for x in g.neighbors[u]:
        if x in phi:
            out.add(phi[x])
        if g.degree(x) % 2 == 0:
            odds = odd_colors(g, phi, x)
            if not odds:
                continue
            if skip_multi_odd and len(odds) >= 2:
                continue
            if any(_flexible_quiet(g, phi, t, x) for t in g.threads_at(x) if t.kind <= 3):
                continue
            out.add(min(odds))
    for t in g.threads_at(u):
        if t.kind == 1:
            w = t.anchors[0] if t.anchors[1] == u else t.anchors[1]
            if w != u and w in phi:
                out.add(phi[w])
    return out


# ---------------------------------------------------------------------------
# Two extensions of a flexible thread
# ---------------------------------------------------------------------------

def two_extensions(g: PlaneGraph, thread: Thread, u: int,
                   phi: PartialColoring) -> tuple[PartialColoring, PartialColoring]:
    """Two colorings of the flexible thread that agree off it, keep odd colors
    on the thread and the far anchor, and differ at the vertex next to u."""
    if not is_flexible(g, thread, u, phi):
        raise NotFlexible("thread is not flexible for this anchor and coloring")
    interior, w = thread.oriented_from(u)
    odds, _ = _flex_witnesses(g, phi, thread, u)
    cu, cw = phi[u], phi[w]
    base = phi.without(interior)
    k = thread.kind

    if k == 1:
        j = cu                                   # flexibility: phi(u) is odd at w
        a, b = sorted(c for c in range(1, 5) if c not in {cu, cw, j})[:2]
        v1 = interior[0]
        return base.with_color(v1, a), base.with_color(v1, b)

    if k == 2:
        j = cu if cu in odds else min(odds)
        a, b = sorted(c for c in range(1, 5) if c not in {cu, cw, j})[:2]
        v1, v2 = interior
        return (base.with_colors({v1: b, v2: a}),
                base.with_colors({v1: a, v2: b}))

    j = min(odds - {cu})
    v1, v2, v3 = interior
    first, second = sorted(c for c in range(1, 5) if c not in {cu, j})[:2]
    exts = []
    for c1 in (first, second):
        c3 = min(c for c in range(1, 5) if c not in {j, cw, c1})
        exts.append(base.with_colors({v1: c1, v2: j, v3: c3}))
    return exts[0], exts[1]


# ---------------------------------------------------------------------------
# Greedy extension over S[u]
# ---------------------------------------------------------------------------

@dataclass
class GreedyTrace:
    alpha: int = 0
    chosen_thread: tuple[int, ...] = ()
    rule_order: list[tuple[str, int]] = field(default_factory=list)
    repaired: list[int] = field(default_factory=list)


def greedy_extend(g: PlaneGraph, u: int, phi: PartialColoring,
                  trace: GreedyTrace | None = None) -> PartialColoring:
    """Extend an odd 4-coloring of g - S[u] to all of g.

    Requires girth >= 10 and |flex_set| > |forb_set| (otherwise Stuck).  Picks
    a non-forbidden flexible color for u, colors the deleted vertices by the
    four neighbor rules, resolves u and flexible anchors via two_extensions.
    Every thread flexible for u beforehand stays flexible afterwards.
    """
    gv = girth(g)
    if gv is not None and gv < 10:
        raise PreconditionFailed("greedy extension requires girth at least 10")
    if phi.k != 4:
        raise PreconditionFailed("greedy extension requires a 4-color palette")
    s = deletion_set(g, u)
    if phi.domain != frozenset(range(g.vertex_count)) - s.vertices:
        raise PreconditionFailed("coloring must cover exactly the graph minus S[u]")
    if not is_odd_coloring_excluding(g, phi, s.vertices):
        raise PreconditionFailed("coloring is not odd on the graph minus S[u]")
    for t in g.threads_at(u):
        far = t.anchors[0] if t.anchors[1] == u else t.anchors[1]
        if far != u and all(x in s.vertices for x in g.neighbors[far]):
            raise PreconditionFailed(
                f"far anchor {far} would be isolated in the graph minus S[u]")

    flexible = flex_set(g, u, phi)
    forbidden = forb_set(g, u, phi)
    if len(flexible) <= len(forbidden):
        raise Stuck(f"|Flex|={len(flexible)} not larger than |Forb|={len(forbidden)}")
    alpha = min(flexible - forbidden)
    cur = phi.with_color(u, alpha)

    chosen = min((t for t in g.threads_at(u)
                  if t.kind <= 3 and _flexible_quiet(g, cur, t, u)),
                 key=lambda t: t.interior)
    if trace is not None:
        trace.alpha = alpha
        trace.chosen_thread = chosen.interior
    near_endpoint = chosen.oriented_from(u)[0][0]

    for x in sorted(v for v in g.neighbors[u] if v in s.vertices):
        if x == near_endpoint or x in cur:
            continue
        cur = _apply_rule(g, u, x, alpha, cur, trace)

    remaining = [v for v in sorted(s.vertices) if v not in cur and v not in chosen.interior]
    if remaining:
        raise PreconditionFailed(f"deletion set vertices {remaining} not covered by the rules")

    # color the reserved thread so that u gains an odd color
    ext1, ext2 = two_extensions(g, chosen, u, cur)
    cur = ext1 if odd_colors(g, ext1, u) else ext2
    assert odd_colors(g, cur, u)

    # repair even neighbors whose only odd color was alpha
    for x in sorted(g.neighbors[u]):
        if x not in cur or any(w not in cur for w in g.neighbors[x]):
            continue
        if odd_colors(g, cur, x):
            continue
        repair = min((t for t in g.threads_at(x)
                      if t.kind <= 3 and _flexible_quiet(g, cur, t, x)),
                     key=lambda t: t.interior, default=None)
        if repair is None:
            raise Stuck(f"neighbor {x} lost its odd color and anchors no flexible thread")
        r1, r2 = two_extensions(g, repair, x, cur)
        cur = r1 if odd_colors(g, r1, x) else r2
        if trace is not None:
            trace.repaired.append(x)

    check = is_odd_coloring(g, cur)
    if not check:
        raise Stuck(f"extension left vertex {check.failing_vertex} without an odd color")
    return cur


def _apply_rule(g: PlaneGraph, u: int, x: int, alpha: int,
                cur: PartialColoring, trace: GreedyTrace | None) -> PartialColoring:
    def pick(avoid):
        return min(c for c in range(1, cur.k + 1) if c not in set(avoid))

    def odd_of(phi, w):
        odds = odd_colors(g, phi, w)
        return {min(odds)} if odds else set()

    deg = g.degree(x)
    if deg == 2:
        t = g.thread_of[x]
        far = t.anchors[0] if t.anchors[1] == u else t.anchors[1]
        path = t.interior if t.interior[0] == x else tuple(reversed(t.interior))
        if t.kind == 1:
            cur = cur.with_color(x, pick({alpha, cur[far]} | odd_of(cur, far)))
            rule = "rule1"
        elif t.kind == 2:
            y = path[1]
            cur = cur.with_color(y, pick({alpha, cur[far]} | odd_of(cur, far)))
            cur = cur.with_color(x, pick({alpha, cur[y], cur[far]}))
            rule = "rule2"
        elif t.kind == 3:
            y, z = path[1], path[2]
            cur = cur.with_color(z, pick({cur[far]} | odd_of(cur, far)))
            cur = cur.with_color(y, pick({alpha, cur[z], cur[far]}))
            cur = cur.with_color(x, pick({alpha, cur[y], cur[z]}))
            rule = "rule3"
        else:
            raise PreconditionFailed(f"vertex {x} lies on a {t.kind}-thread")
    elif deg == 3 and classify_vertex(g, x) is VertexClass.THREE_WORST:
        ys = [y for y in g.neighbors[x] if g.degree(y) == 2 and y != u]
        ws = {y: next(w for w in g.neighbors[y] if w != x) for y in ys}
        cur = cur.with_color(x, pick({alpha} | {cur[w] for w in ws.values() if w in cur}))
        for y in sorted(ys):
            w = ws[y]
            cur = cur.with_color(y, pick({cur[x], cur[w]} | odd_of(cur, w)))
        rule = "rule4"
    else:
        raise PreconditionFailed(f"no coloring rule applies to deleted vertex {x}")
    if trace is not None:
        trace.rule_order.append((rule, x))
    return cur


# ---------------------------------------------------------------------------
# Structural inequality detectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityViolation:
    lemma: str
    vertices: tuple[int, ...]
    detail: str


def _forb_or_none(g, u):
    try:
        return forb_number(g, u)
    except Untypeable:
        return None


def inequality_check(g: PlaneGraph) -> list[InequalityViolation]:
    """Check every instance of the forb/flex inequality hypotheses.

    A violated conclusion certifies that g is not a minimum counterexample to
    the girth-10 odd-coloring theorem.
    """
    out = []
    forb = {}
    flex = {}
    for v in range(g.vertex_count):
        forb[v] = _forb_or_none(g, v)
        flex[v] = flex_number(g, v)

    for v in range(g.vertex_count):
        if forb[v] is None:
            continue
        if flex[v] > forb[v]:
            out.append(InequalityViolation(
                "cor_flex_forb", (v,),
                f"flex({v})={flex[v]} > forb({v})={forb[v]}"))
        for t in g.threads_at(v):
            if t.kind <= 3 and forb[v] < t.kind:
                out.append(InequalityViolation(
                    "cor_ti_forb", (v,),
                    f"t{t.kind}-neighbor but forb({v})={forb[v]} < {t.kind}"))
                break

    for u1, u2 in g.edges:
        if g.degree(u1) < 4 or g.degree(u2) < 4:
            continue
        if forb[u1] is None or forb[u2] is None:
            continue
        i, j = flex[u1], flex[u2]
        if i >= 1 and j >= 1 and forb[u1] + forb[u2] < i + j + 2:
            out.append(InequalityViolation(
                "lem_adjacent_pair", (u1, u2),
                f"forb sum {forb[u1] + forb[u2]} < {i}+{j}+2"))

    for v in range(g.vertex_count):
        if g.degree(v) < 4 or forb[v] is None or flex[v] < 1:
            continue
        nbrs = [w for w in g.neighbors[v]
                if g.degree(w) >= 4 and forb[w] is not None and flex[w] >= 1]
        for a in nbrs:
            for b in nbrs:
                if a >= b:
                    continue
                i, j, kk = flex[a], flex[v], flex[b]
                if forb[a] + forb[v] + forb[b] < i + j + kk + 4:
                    out.append(InequalityViolation(
                        "lem_three_path", (a, v, b),
                        f"forb sum {forb[a] + forb[v] + forb[b]} < {i}+{j}+{kk}+4"))

    for v in range(g.vertex_count):
        if g.degree(v) != 3 or classify_vertex(g, v) is not VertexClass.THREE_SBAD:
            continue
        fours = [w for w in g.neighbors[v] if g.degree(w) == 4 and forb[w] is not None]
        for a in fours:
            for b in fours:
                if a >= b:
                    continue
                if _t3_count(g, a) >= 1 and _t3_count(g, b) >= 1:
                    lo, hi = sorted((forb[a], forb[b]))
                    if not (lo >= 3 and hi >= 4):
                        out.append(InequalityViolation(
                            "lem_sbad_between_fours", (a, v, b),
                            f"forb pair ({forb[a]}, {forb[b]}) below (3, 4)"))

    out.extend(_face_a4a4a1a1_checks(g, forb))
    return out


def _t3_count(g: PlaneGraph, v: int) -> int:
    return sum(1 for t in g.threads_at(v) if t.kind == 3)


def _face_a4a4a1a1_checks(g: PlaneGraph, forb) -> list[InequalityViolation]:
    from .arrays import ArraySymbol, parse_arrays

    target = (ArraySymbol.A4, ArraySymbol.A4, ArraySymbol.A1, ArraySymbol.A1)
    out = []
    seen = set()
    for f in g.faces:
        if f.length != 10:
            continue
        for rep in parse_arrays(f.degree_walk):
            if rep.symbols != target:
                continue
            walk = list(f.vertices)
            if rep.reversed_orientation:
                walk = list(reversed(walk))
            walk = walk[rep.start:] + walk[:rep.start]
            c, a, b = walk[0], walk[8], walk[9]
            if g.degree(b) != 3:
                continue
            key = (f.id, b)
            if key in seen:
                continue
            seen.add(key)
            if forb.get(a) is None or forb.get(c) is None:
                continue
            if forb[a] == 3 and forb[c] == 3:
                for x in (a, c):
                    if _t3_count(g, x) >= 2:
                        out.append(InequalityViolation(
                            "lem_face_three_vertex", (x, b, f.id),
                            f"forb(a)=forb(c)=3 but {x} anchors "
                            f"{_t3_count(g, x)} 3-threads"))
            if classify_vertex(g, b) is VertexClass.THREE_SBAD and forb[a] + forb[c] <= 7:
                lo = a if forb[a] <= forb[c] else c
                if _t3_count(g, lo) >= 2:
                    out.append(InequalityViolation(
                        "lem_face_sbad_vertex", (lo, b, f.id),
                        f"forb sum {forb[a] + forb[c]} <= 7 but low-forb anchor "
                        f"{lo} anchors {_t3_count(g, lo)} 3-threads"))
    return out
