"""Exception types shared across the package.

Names follow the error contracts of the individual operations; everything
derives from OddPcfError so callers can catch broadly.
"""

from __future__ import annotations


class OddPcfError(Exception):
    """Base class for all package errors."""


# --- plane graph construction -------------------------------------------------

class MalformedRotation(OddPcfError):
    """Rotation table is not symmetric or references unknown vertices."""


class NotSimple(OddPcfError):
    """Input contains a loop or a parallel edge."""


class NotPlanarEmbedding(OddPcfError):
    """Rotation system fails Euler's formula (positive genus)."""


class NotPlanar(OddPcfError):
    """Abstract graph admits no planar embedding."""


class Disconnected(OddPcfError):
    """Operation requires a connected graph."""


class NotOn2Thread(OddPcfError):
    """Vertex is not an interior vertex of a 2-thread."""


# --- coloring -----------------------------------------------------------------

class ImproperColoring(OddPcfError):
    """Partial coloring assigns equal colors to adjacent vertices."""

    def __init__(self, edge):
        super().__init__(f"edge {edge} has equal endpoint colors")
        self.edge = edge


class FromAbsent(OddPcfError):
    """Multiset flip source color has multiplicity zero."""


class SameColor(OddPcfError):
    """Multiset flip source and target colors coincide."""


class CannotExtend(OddPcfError):
    """Thread extension is blocked; carries the blocking pattern."""

    def __init__(self, message, pattern=None):
        super().__init__(message)
        self.pattern = pattern or {}


# --- forb/flex ---------------------------------------------------------------

class Untypeable(OddPcfError):
    """Neighbor does not fall into any of the nine neighbor types."""


class PreconditionFailed(OddPcfError):
    """A stated operation precondition does not hold; message names the clause."""


class NotFlexible(OddPcfError):
    """Thread is not flexible for the given anchor and coloring."""


class Stuck(OddPcfError):
    """Greedy extension guard failed: flexible set not larger than forbidden set."""


# --- arrays / discharging ----------------------------------------------------

class Unrepresentable(OddPcfError):
    """Face boundary admits no array representation."""


class RulePreconditionFailed(OddPcfError):
    """Discharging rule application precondition does not hold."""


# --- solver -------------------------------------------------------------------

class TooLarge(OddPcfError):
    """Graph exceeds the exhaustive-search guard."""


class Exceeds(OddPcfError):
    """No valid coloring with at most max_k colors."""

    def __init__(self, max_k):
        super().__init__(f"no valid coloring with at most {max_k} colors")
        self.max_k = max_k


class TooManyTargets(OddPcfError):
    """Exhaustive extension target set is too large."""


# --- generator / reducible ----------------------------------------------------

class InvalidSpec(OddPcfError):
    """Generator specification is out of range."""


class Incomplete(OddPcfError):
    """Constructive colorer ran out of procedures with fallback disabled."""
