"""Partial proper colorings with odd-color and unique-color semantics.

A coloring assigns colors 1..k (k defaults to 4) to a subset of the vertices.
Values are copy-on-extend: ``with_color`` returns a new object, so colorings
can be shared freely.  The validity checkers use partial semantics: a vertex
is only required to see an odd (resp. unique) color once its whole
neighborhood is assigned; on total colorings this is the textbook definition.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CannotExtend, FromAbsent, ImproperColoring, PreconditionFailed, SameColor
from .plane_graph import PlaneGraph, Thread


class PartialColoring:
    """Partial map vertex -> color in 1..k."""

    __slots__ = ("k", "_assign")

    def __init__(self, assignment: Mapping[int, int] | None = None, k: int = 4):
        self.k = k
        self._assign = dict(assignment or {})
        for v, c in self._assign.items():
            if not 1 <= c <= k:
                raise ValueError(f"color {c} at vertex {v} outside 1..{k}")

    def get(self, v: int) -> int | None:
        return self._assign.get(v)

    def __contains__(self, v: int) -> bool:
        return v in self._assign

    def __getitem__(self, v: int) -> int:
        return self._assign[v]

    def __len__(self) -> int:
        return len(self._assign)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PartialColoring)
                and self.k == other.k and self._assign == other._assign)

    def __repr__(self) -> str:
        items = ", ".join(f"{v}={c}" for v, c in sorted(self._assign.items()))
        return f"PartialColoring({{{items}}}, k={self.k})"

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self._assign)

    def as_dict(self) -> dict[int, int]:
        return dict(self._assign)

    def with_color(self, v: int, c: int) -> "PartialColoring":
        if not 1 <= c <= self.k:
            raise ValueError(f"color {c} outside 1..{self.k}")
        new = dict(self._assign)
        new[v] = c
        return PartialColoring(new, self.k)

    def with_colors(self, updates: Mapping[int, int]) -> "PartialColoring":
        new = dict(self._assign)
        new.update(updates)
        return PartialColoring(new, self.k)

    def without(self, vertices: Iterable[int]) -> "PartialColoring":
        drop = set(vertices)
        return PartialColoring({v: c for v, c in self._assign.items() if v not in drop}, self.k)


@dataclass
class ColorMultiset:
    """Multiset of colors, e.g. the colors seen in a neighborhood."""

    counts: Counter

    @staticmethod
    def of(colors: Iterable[int]) -> "ColorMultiset":
        return ColorMultiset(Counter(colors))

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    def odd_elements(self) -> set[int]:
        return {c for c, m in self.counts.items() if m % 2 == 1}

    def unique_elements(self) -> set[int]:
        return {c for c, m in self.counts.items() if m == 1}


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an odd/PCF validity check, with a failing vertex when false."""

    ok: bool
    failing_vertex: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "failing_vertex": self.failing_vertex}


def neighborhood_multiset(g: PlaneGraph, phi: PartialColoring, v: int) -> ColorMultiset:
    return ColorMultiset.of(phi[w] for w in g.neighbors[v] if w in phi)


def odd_colors(g: PlaneGraph, phi: PartialColoring, v: int) -> set[int]:
    """Colors of odd multiplicity among v's assigned neighbors."""
    return neighborhood_multiset(g, phi, v).odd_elements()


def unique_colors(g: PlaneGraph, phi: PartialColoring, v: int) -> set[int]:
    """Colors of multiplicity exactly one among v's assigned neighbors."""
    return neighborhood_multiset(g, phi, v).unique_elements()


def designated_odd(g: PlaneGraph, phi: PartialColoring, v: int) -> int | None:
    """The smallest odd color, used wherever a single odd color is needed."""
    odds = odd_colors(g, phi, v)
    return min(odds) if odds else None


def _check_properness(g: PlaneGraph, phi: PartialColoring):
    for u, v in g.edges:
        if u in phi and v in phi and phi[u] == phi[v]:
            raise ImproperColoring((u, v))


def _check(g: PlaneGraph, phi: PartialColoring, want_unique: bool,
           removed: frozenset[int] = frozenset()) -> CheckResult:
    _check_properness(g, phi)
    pick = unique_colors if want_unique else odd_colors
    for v in sorted(phi.domain):
        live = [w for w in g.neighbors[v] if w not in removed]
        if not live or any(w not in phi for w in live):
            continue
        if not pick(g, phi, v):
            return CheckResult(False, v)
    return CheckResult(True)


def is_odd_coloring(g: PlaneGraph, phi: PartialColoring) -> CheckResult:
    """Proper + every checkable vertex has an odd color.

    Checkable means: assigned, non-isolated, full neighborhood assigned.
    Raises ImproperColoring (with the offending edge) if not proper.
    """
    return _check(g, phi, want_unique=False)


def is_pcf_coloring(g: PlaneGraph, phi: PartialColoring) -> CheckResult:
    """Proper + every checkable vertex has a uniquely occurring color."""
    return _check(g, phi, want_unique=True)


def is_odd_coloring_excluding(g: PlaneGraph, phi: PartialColoring,
                              removed: Iterable[int]) -> CheckResult:
    """Odd-coloring check for phi viewed as a coloring of g minus ``removed``.

    Unlike is_odd_coloring, anchors bordering the removed set are checked
    against their surviving neighbors only.
    """
    return _check(g, phi, want_unique=False, removed=frozenset(removed))


def is_pcf_coloring_excluding(g: PlaneGraph, phi: PartialColoring,
                              removed: Iterable[int]) -> CheckResult:
    return _check(g, phi, want_unique=True, removed=frozenset(removed))


@dataclass(frozen=True)
class ParityFlip:
    """Which of X (original) and X' (one element changed) has an odd element."""

    original_odd: int | None
    flipped_odd: int | None

    @property
    def original_qualifies(self) -> bool:
        return self.original_odd is not None

    @property
    def flipped_qualifies(self) -> bool:
        return self.flipped_odd is not None


def parity_flip(x: ColorMultiset, frm: int, to: int) -> ParityFlip:
    """Change one ``frm`` into ``to``; at least one of X, X' has an odd element."""
    if frm == to:
        raise SameColor(f"flip source and target are both {frm}")
    if x.counts[frm] < 1:
        raise FromAbsent(f"color {frm} absent from multiset")
    flipped = Counter(x.counts)
    flipped[frm] -= 1
    flipped[to] += 1
    orig_odds = x.odd_elements()
    flip_odds = ColorMultiset(flipped).odd_elements()
    result = ParityFlip(min(orig_odds) if orig_odds else None,
                        min(flip_odds) if flip_odds else None)
    # guaranteed: changing one element cannot leave both all-even
    assert result.original_qualifies or result.flipped_qualifies
    return result


# ---------------------------------------------------------------------------
# Constructive thread extensions
# ---------------------------------------------------------------------------

def _extension_guard(g, phi, thread, expected_kind):
    if thread.kind != expected_kind:
        raise PreconditionFailed(f"thread has kind {thread.kind}, expected {expected_kind}")
    if phi.k != 4:
        raise PreconditionFailed("thread extensions require a 4-color palette")
    interior = set(thread.interior)
    if any(v in phi for v in interior):
        raise PreconditionFailed("thread interior must be uncolored")
    if phi.domain != frozenset(range(g.vertex_count)) - interior:
        raise PreconditionFailed("coloring must cover exactly the graph minus the interior")
    if not is_odd_coloring_excluding(g, phi, interior):
        raise PreconditionFailed("coloring is not odd on the graph minus the interior")


def extend_over_2thread(g: PlaneGraph, phi: PartialColoring,
                        thread: Thread) -> PartialColoring:
    """Extend an odd 4-coloring of g minus a 2-thread onto the thread.

    Succeeds unless the anchors have distinct colors and both have the same
    single odd color; in that blocked pattern raises CannotExtend.
    """
    _extension_guard(g, phi, thread, 2)
    x1, x2 = thread.interior
    y1, y2 = thread.anchors
    odd1, odd2 = odd_colors(g, phi, y1), odd_colors(g, phi, y2)
    c1, c2 = phi[y1], phi[y2]

    avoid1 = {c1, c2} | (odd1 if len(odd1) == 1 else set())
    for a in range(1, 5):
        if a in avoid1:
            continue
        avoid2 = {a, c1, c2} | (odd2 if len(odd2) == 1 else set())
        for b in range(1, 5):
            if b not in avoid2:
                return phi.with_colors({x1: a, x2: b})
    raise CannotExtend(
        "anchors carry distinct colors and an equal unique odd color",
        pattern={"anchor_colors": (c1, c2), "odd_color": min(odd1) if odd1 else None})


def extend_over_3thread(g: PlaneGraph, phi: PartialColoring,
                        thread: Thread) -> PartialColoring:
    """Extend an odd 4-coloring of g minus a 3-thread onto the thread.

    Blocked exactly in the cross pattern: each anchor's only odd color is the
    other anchor's color.
    """
    _extension_guard(g, phi, thread, 3)
    x1, x2, x3 = thread.interior
    y1, y2 = thread.anchors
    c1, c2 = phi[y1], phi[y2]
    odd1, odd2 = odd_colors(g, phi, y1), odd_colors(g, phi, y2)

    def fill(mid_anchor_odds, near, mid, far, c_near, c_far, odd_far):
        # middle takes an odd color of the near anchor, then far, then near side
        for m in sorted(mid_anchor_odds):
            if m == c_far:
                continue
            far_avoid = {m, c_far} | (odd_far if len(odd_far) == 1 else set())
            f = min(c for c in range(1, 5) if c not in far_avoid)
            near_avoid = {m, f, c_near}
            n = min(c for c in range(1, 5) if c not in near_avoid)
            return phi.with_colors({near: n, mid: m, far: f})
        return None

    ext = fill(odd1, x1, x2, x3, c1, c2, odd2)
    if ext is None:
        ext = fill(odd2, x3, x2, x1, c2, c1, odd1)
    if ext is None:
        raise CannotExtend(
            "cross pattern: each anchor's unique odd color is the other anchor's color",
            pattern={"anchor_colors": (c1, c2),
                     "odd_colors": (min(odd1, default=None), min(odd2, default=None))})
    return ext
