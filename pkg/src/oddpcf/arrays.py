"""Factoring face boundary degree walks into the six array symbols.

The grammar: each symbol covers one 3+-vertex (the leading anchor) plus the
run of degree-2 vertices that follows it, and constrains the first degree of
the *next* symbol:

    a4        4+ 2 2 2   followed by 4+
    a3        4+ 2 2     followed by 4+
    a2_worst  3  2       followed by 3
    a2_bad    3  2       followed by 4+,  or  4+ 2  followed by 3
    a2_good   4+ 2       followed by 4+
    a1        3+         followed by 3+

A cyclic walk factors in at most one way per starting anchor and orientation,
so the enumeration ranges over starts and both orientations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Unrepresentable
from .plane_graph import Face, PlaneGraph


class ArraySymbol(enum.Enum):
    A4 = "a4"
    A3 = "a3"
    A2_WORST = "a2w"
    A2_BAD = "a2b"
    A2_GOOD = "a2g"
    A1 = "a1"

    @property
    def span(self) -> int:
        """Number of walk vertices the symbol covers."""
        return _SPAN[self]


_SPAN = {
    ArraySymbol.A4: 4,
    ArraySymbol.A3: 3,
    ArraySymbol.A2_WORST: 2,
    ArraySymbol.A2_BAD: 2,
    ArraySymbol.A2_GOOD: 2,
    ArraySymbol.A1: 1,
}

_A2_SYMBOLS = {ArraySymbol.A2_WORST, ArraySymbol.A2_BAD, ArraySymbol.A2_GOOD}


@dataclass(frozen=True)
class ArrayRepresentation:
    """One factorization of a cyclic degree walk."""

    symbols: tuple[ArraySymbol, ...]
    start: int
    reversed_orientation: bool

    def render(self) -> str:
        return "·".join(s.value for s in self.symbols)

    @property
    def multiset(self) -> tuple[str, ...]:
        return tuple(sorted(s.value for s in self.symbols))


class FaceClass(enum.Enum):
    POOR = "poor"
    RICH = "rich"


_POOR_MULTISETS = (
    tuple(sorted(["a4", "a4", "a1", "a1"])),
    tuple(sorted(["a4", "a3", "a2g", "a1"])),
)


def _symbol_for(anchor_deg: int, run: int, next_deg: int) -> ArraySymbol | None:
    """Symbol covering one anchor plus its following 2-run, or None."""
    if run == 0:
        return ArraySymbol.A1 if next_deg >= 3 else None
    if run == 1:
        if anchor_deg == 3:
            if next_deg == 3:
                return ArraySymbol.A2_WORST
            if next_deg >= 4:
                return ArraySymbol.A2_BAD
            return None
        if next_deg == 3:
            return ArraySymbol.A2_BAD
        if next_deg >= 4:
            return ArraySymbol.A2_GOOD
        return None
    if run == 2:
        return ArraySymbol.A3 if anchor_deg >= 4 and next_deg >= 4 else None
    if run == 3:
        return ArraySymbol.A4 if anchor_deg >= 4 and next_deg >= 4 else None
    return None


def _parse_from(walk: Sequence[int], start: int) -> tuple[ArraySymbol, ...] | None:
    n = len(walk)
    symbols = []
    pos = start
    consumed = 0
    while consumed < n:
        anchor = walk[pos % n]
        if anchor < 3:
            return None
        run = 0
        while run < n and walk[(pos + 1 + run) % n] == 2:
            run += 1
        if consumed + 1 + run > n:
            return None          # run would spill past the starting anchor
        sym = _symbol_for(anchor, run, walk[(pos + 1 + run) % n])
        if sym is None:
            return None
        symbols.append(sym)
        pos += 1 + run
        consumed += 1 + run
    return tuple(symbols)


def parse_arrays(degree_walk: Sequence[int]) -> list[ArrayRepresentation]:
    """All factorizations of the cyclic walk, over all starts and orientations.

    The empty list means the walk has no array representation (it contains a
    degree 1, a 2-2-2-2 run, or a 2+-run next to a degree-3 vertex).
    """
    walk = list(degree_walk)
    if len(walk) < 3:
        raise ValueError("degree walk must have length at least 3")
    reps = []
    for rev in (False, True):
        view = list(reversed(walk)) if rev else walk
        for start, d in enumerate(view):
            if d < 3:
                continue
            symbols = _parse_from(view, start)
            if symbols is not None:
                reps.append(ArrayRepresentation(symbols, start, rev))
    return reps


def classify_face(g: PlaneGraph, f: Face) -> FaceClass:
    """Poor iff some representation is an arrangement of a poor multiset."""
    reps = parse_arrays(f.degree_walk)
    if not reps:
        raise Unrepresentable(f"face {f.id} has no array representation")
    for rep in reps:
        if rep.multiset in _POOR_MULTISETS:
            return FaceClass.POOR
    return FaceClass.RICH


def face_class_total(g: PlaneGraph, f: Face) -> FaceClass:
    """Like classify_face but total: unrepresentable faces count as rich."""
    try:
        return classify_face(g, f)
    except Unrepresentable:
        return FaceClass.RICH


# ---------------------------------------------------------------------------
# Average charge received per represented vertex (used by the audits)
# ---------------------------------------------------------------------------

# face-rule payments per symbol, odd rule system: endpoints/middle of the runs
_ODD_FACE_TOTAL = {
    ArraySymbol.A4: Fraction(7, 12) + Fraction(1) + Fraction(7, 12),
    ArraySymbol.A3: Fraction(2, 3) * 2,
    ArraySymbol.A2_WORST: Fraction(4, 5),
    ArraySymbol.A2_BAD: Fraction(11, 15),
    ArraySymbol.A2_GOOD: Fraction(2, 3),
    ArraySymbol.A1: Fraction(0),
}

_PCF_SUPPORTED = Fraction(1, 2)
_PCF_UNSUPPORTED = Fraction(3, 4)


def average_charge(symbol: ArraySymbol, rules: str = "odd"):
    """Average charge a face sends per vertex represented by ``symbol``.

    For the PCF rules an a3 covers a 2-thread whose two vertices may each be
    supported or unsupported; the three possible averages are returned as a
    tuple (0, 1, 2 supported vertices).
    """
    if rules == "odd":
        return _ODD_FACE_TOTAL[symbol] / symbol.span
    if rules == "pcf":
        if symbol is ArraySymbol.A4:
            return (Fraction(1, 2) + 1 + Fraction(1, 2)) / 4
        if symbol is ArraySymbol.A3:
            return tuple((_PCF_UNSUPPORTED * (2 - s) + _PCF_SUPPORTED * s) / 3
                         for s in (0, 1, 2))
        if symbol in _A2_SYMBOLS:
            return Fraction(1, 1) / 2
        return Fraction(0)
    raise ValueError(f"unknown rule system {rules!r}")
