"""Combinatorial plane graphs as rotation systems.

A graph is stored as a set of darts (half-edges).  Each dart knows its origin
vertex, its twin (the opposite dart of the same edge) and the rotation-next
dart, i.e. the next dart counterclockwise around the origin.  Faces are never
stored; they are derived by the usual traversal where the successor of a dart
on its face boundary is the rotation-successor of its twin.  This makes
boundary walks of cut vertices come out right without special cases.

Instances are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    Disconnected,
    MalformedRotation,
    NotOn2Thread,
    NotPlanar,
    NotPlanarEmbedding,
    NotSimple,
)


@dataclass(frozen=True)
class Face:
    """One face of the embedding: a closed walk of darts."""

    id: int
    darts: tuple[int, ...]
    vertices: tuple[int, ...]       # origin of each dart, in walk order
    degree_walk: tuple[int, ...]    # degree of each walk vertex

    @property
    def length(self) -> int:
        """Number of dart occurrences on the boundary (counts multiplicity)."""
        return len(self.darts)


@dataclass(frozen=True)
class Thread:
    """Maximal path of degree-2 vertices between two 3+-anchors.

    ``interior`` runs from the endpoint next to ``anchors[0]`` to the endpoint
    next to ``anchors[1]``.  ``kind`` is the interior length; proper threads
    have kind 1..3, longer runs are returned too so detectors can flag them.
    """

    interior: tuple[int, ...]
    anchors: tuple[int, int]

    @property
    def kind(self) -> int:
        return len(self.interior)

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.interior[0], self.interior[-1]

    def anchored_by(self, u: int) -> bool:
        return u in self.anchors

    def oriented_from(self, u: int) -> tuple[tuple[int, ...], int]:
        """Interior read starting next to anchor ``u``, plus the far anchor."""
        if self.anchors[0] == u:
            return self.interior, self.anchors[1]
        if self.anchors[1] == u:
            return tuple(reversed(self.interior)), self.anchors[0]
        raise ValueError(f"vertex {u} does not anchor this thread")


class VertexClass(enum.Enum):
    TWO_GOOD = "2-good"
    TWO_BAD = "2-bad"
    TWO_WORST = "2-worst"
    THREE_GOOD = "3-good"
    THREE_SBAD = "3-s-bad"
    THREE_BAD = "3-bad"
    THREE_WORST = "3-worst"
    UNCLASSIFIED = "unclassified"


class PlaneGraph:
    """Immutable rotation-system embedding of a simple graph."""

    __slots__ = ("vertex_count", "origin", "twin", "rnext", "_dart_of", "__dict__")

    def __init__(self, vertex_count: int, origin: Sequence[int],
                 twin: Sequence[int], rnext: Sequence[int]):
        self.vertex_count = vertex_count
        self.origin = tuple(origin)
        self.twin = tuple(twin)
        self.rnext = tuple(rnext)
        self._validate()

    # -- construction ----------------------------------------------------------

    @staticmethod
    def from_rotation(rotation_table: Sequence[Sequence[int]]) -> "PlaneGraph":
        """Build from per-vertex neighbor lists in counterclockwise order.

        Raises MalformedRotation for asymmetric adjacencies, NotSimple for
        loops or repeated neighbors, NotPlanarEmbedding when face traversal
        contradicts Euler's formula.
        """
        n = len(rotation_table)
        dart_of = {}
        origin, darts = [], []
        for v, nbrs in enumerate(rotation_table):
            seen = set()
            for w in nbrs:
                if not isinstance(w, int) or not 0 <= w < n:
                    raise MalformedRotation(f"vertex {v} lists unknown neighbor {w}")
                if w == v:
                    raise NotSimple(f"loop at vertex {v}")
                if w in seen:
                    raise NotSimple(f"parallel edge {{{v}, {w}}}")
                seen.add(w)
                dart_of[(v, w)] = len(darts)
                darts.append((v, w))
                origin.append(v)
        twin = [0] * len(darts)
        for d, (v, w) in enumerate(darts):
            back = dart_of.get((w, v))
            if back is None:
                raise MalformedRotation(f"vertex {v} lists {w} but {w} omits {v}")
            twin[d] = back
        rnext = [0] * len(darts)
        for v, nbrs in enumerate(rotation_table):
            ds = [dart_of[(v, w)] for w in nbrs]
            for i, d in enumerate(ds):
                rnext[d] = ds[(i + 1) % len(ds)]
        return PlaneGraph(n, origin, twin, rnext)

    def _validate(self):
        m = len(self.origin)
        for d in range(m):
            t = self.twin[d]
            if t == d or self.twin[t] != d:
                raise MalformedRotation("twin is not a fixed-point-free involution")
            if self.origin[t] == self.origin[d]:
                raise NotSimple(f"loop at vertex {self.origin[d]}")
        # rotation-next must be one cycle per vertex
        per_vertex = {}
        for d in range(m):
            per_vertex.setdefault(self.origin[d], []).append(d)
        for v, ds in per_vertex.items():
            seen, d = set(), ds[0]
            while d not in seen:
                seen.add(d)
                if self.origin[d] != v:
                    raise MalformedRotation("rotation leaves its vertex")
                d = self.rnext[d]
            if len(seen) != len(ds):
                raise MalformedRotation(f"rotation at vertex {v} is not a single cycle")
        # genus 0, component by component; isolated vertices carry no darts
        # and count once, components with edges count twice
        f = len(self.faces)
        e = m // 2
        isolated = self.vertex_count - len({self.origin[d] for d in range(m)})
        if self.vertex_count - e + f != 2 * len(self.components) - isolated:
            raise NotPlanarEmbedding(
                f"V-E+F = {self.vertex_count}-{e}+{f} violates Euler's formula")

    # -- derived structure -------------------------------------------------------

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.vertex_count)]
        per_vertex = [[] for _ in range(self.vertex_count)]
        for d in range(len(self.origin)):
            per_vertex[self.origin[d]].append(d)
        for v, ds in enumerate(per_vertex):
            if not ds:
                continue
            d0 = min(ds)
            d = d0
            while True:
                out[v].append(self.origin[self.twin[d]])
                d = self.rnext[d]
                if d == d0:
                    break
        return tuple(tuple(ns) for ns in out)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    @property
    def edge_count(self) -> int:
        return len(self.origin) // 2

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({(min(self.origin[d], self.origin[self.twin[d]]),
                              max(self.origin[d], self.origin[self.twin[d]]))
                             for d in range(len(self.origin))}))

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        seen = [False] * len(self.origin)
        faces = []
        for d0 in range(len(self.origin)):
            if seen[d0]:
                continue
            walk = []
            d = d0
            while not seen[d]:
                seen[d] = True
                walk.append(d)
                d = self.rnext[self.twin[d]]
            vs = tuple(self.origin[d] for d in walk)
            faces.append(Face(len(faces), tuple(walk), vs,
                              tuple(self.degree(v) for v in vs)))
        return tuple(faces)

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        unvisited = set(range(self.vertex_count))
        comps = []
        while unvisited:
            root = min(unvisited)
            comp, queue = {root}, deque([root])
            while queue:
                v = queue.popleft()
                for w in self.neighbors[v]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            unvisited -= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    @cached_property
    def threads(self) -> tuple[Thread, ...]:
        return _enumerate_threads(self)[0]

    @cached_property
    def pure_cycle_components(self) -> tuple[frozenset[int], ...]:
        """Components in which every vertex has degree 2 (no anchors exist)."""
        return _enumerate_threads(self)[1]

    def threads_at(self, u: int) -> tuple[Thread, ...]:
        return self._threads_by_anchor.get(u, ())

    @cached_property
    def _threads_by_anchor(self) -> dict[int, tuple[Thread, ...]]:
        by_anchor: dict[int, list[Thread]] = {}
        for t in self.threads:
            for a in set(t.anchors):
                by_anchor.setdefault(a, []).append(t)
        return {a: tuple(ts) for a, ts in by_anchor.items()}

    @cached_property
    def thread_of(self) -> dict[int, Thread]:
        """Thread containing each degree-2 interior vertex."""
        out = {}
        for t in self.threads:
            for v in t.interior:
                out[v] = t
        return out

    def rotation_table(self) -> list[list[int]]:
        return [list(ns) for ns in self.neighbors]


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------

def build_from_rotation(rotation_table: Sequence[Sequence[int]]) -> PlaneGraph:
    """Deterministic construction from counterclockwise neighbor lists."""
    return PlaneGraph.from_rotation(rotation_table)


def embed(edge_list: Iterable[tuple[int, int]], vertex_count: int | None = None) -> PlaneGraph:
    """Embed an abstract simple connected graph in the plane.

    Planarity testing and the choice of embedding are delegated to networkx;
    any correct algorithm would do.  Face-level results downstream depend on
    the embedding returned here, degree/girth results do not.
    """
    edges = list(edge_list)
    g = nx.Graph()
    g.add_edges_from(edges)
    if vertex_count is not None:
        g.add_nodes_from(range(vertex_count))
    if g.number_of_nodes() == 0:
        raise Disconnected("empty graph")
    for u, v in edges:
        if u == v:
            raise NotSimple(f"loop at vertex {u}")
    if not nx.is_connected(g):
        raise Disconnected("input graph is not connected")
    ok, planar = nx.check_planarity(g)
    if not ok:
        raise NotPlanar("graph admits no planar embedding")
    n = max(g.nodes) + 1
    table = [[] for _ in range(n)]
    for v in g.nodes:
        # networkx reports clockwise order; reverse for our ccw convention
        table[v] = list(reversed(list(planar.neighbors_cw_order(v))))
    return build_from_rotation(table)


def delete_vertices(g: PlaneGraph, removed: Iterable[int]) -> tuple[PlaneGraph, list[int]]:
    """Induced sub-embedding on V minus ``removed``.

    Returns the subgraph plus new->old vertex id mapping.  Rotation order of
    surviving darts is inherited, so the result is again a plane graph.
    """
    removed = set(removed)
    keep = [v for v in range((g.vertex_count)) if v not in removed]
    new_id = {old: i for i, old in enumerate(keep)}
    table = [[new_id[w] for w in g.neighbors[old] if w not in removed] for old in keep]
    return build_from_rotation(table), keep


# ---------------------------------------------------------------------------
# Structure queries
# ---------------------------------------------------------------------------

def girth(g: PlaneGraph) -> int | None:
    """Length of a shortest cycle; None for forests (acyclic graphs)."""
    best = None
    for root in range(g.vertex_count):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and dist[v] * 2 >= best:
                continue
            for w in g.neighbors[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w and parent[w] != v:
                    cand = dist[v] + dist[w] + 1
                    if best is None or cand < best:
                        best = cand
    return best


def _enumerate_threads(g: PlaneGraph):
    threads = []
    visited = set()
    for v in range(g.vertex_count):
        if g.degree(v) != 2 or v in visited:
            continue
        interior, anchors = _walk_run(g, v)
        visited.update(interior or [v])
        if anchors is not None:
            threads.append(Thread(tuple(interior), anchors))
    pure = tuple(c for c in g.components
                 if c and all(g.degree(v) == 2 for v in c))
    threads.sort(key=lambda t: t.interior)
    return tuple(threads), pure


def _walk_run(g: PlaneGraph, v: int):
    """Maximal degree-2 run through v; anchors None when not 3+-bounded."""
    def extend(start, prev):
        path, cur, prv = [], start, prev
        while g.degree(cur) == 2 and cur != v:
            path.append(cur)
            prv, cur = cur, next(w for w in g.neighbors[cur] if w != prv)
        return path, (None if cur == v else cur)

    a, b = g.neighbors[v]
    left_path, left_anchor = extend(a, v)
    if left_anchor is None:      # looped around: pure 2-regular cycle
        return left_path + [v], None
    right_path, right_anchor = extend(b, v)
    interior = list(reversed(left_path)) + [v] + right_path
    if right_anchor is None or min(g.degree(left_anchor), g.degree(right_anchor)) < 3:
        return interior, None    # run ends at a degree-1 vertex
    return interior, (left_anchor, right_anchor)


def classify_vertex(g: PlaneGraph, v: int) -> VertexClass:
    """Good/bad/worst taxonomy for 1-thread 2-vertices and for 3-vertices."""
    deg = g.degree(v)
    nbr_degs = sorted(g.degree(w) for w in g.neighbors[v])
    if deg == 2:
        if any(d < 3 for d in nbr_degs):
            return VertexClass.UNCLASSIFIED
        threes = sum(1 for d in nbr_degs if d == 3)
        return (VertexClass.TWO_GOOD, VertexClass.TWO_BAD,
                VertexClass.TWO_WORST)[threes]
    if deg == 3:
        if any(d == 1 for d in nbr_degs):
            return VertexClass.UNCLASSIFIED
        twos = sum(1 for d in nbr_degs if d == 2)
        threes = sum(1 for d in nbr_degs if d == 3)
        if twos == 0:
            return VertexClass.THREE_GOOD
        if twos >= 2:
            return VertexClass.THREE_WORST
        if threes == 0:
            return VertexClass.THREE_SBAD
        if threes == 1:
            return VertexClass.THREE_BAD
        return VertexClass.UNCLASSIFIED   # one 2-neighbor, two 3-neighbors
    return VertexClass.UNCLASSIFIED


def is_cut_vertex(g: PlaneGraph, v: int) -> bool:
    """True iff removing v disconnects v's component."""
    nbrs = [w for w in g.neighbors[v]]
    if len(nbrs) <= 1:
        return False
    seen = {v, nbrs[0]}
    queue = deque([nbrs[0]])
    while queue:
        x = queue.popleft()
        for w in g.neighbors[x]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return not all(w in seen for w in nbrs)


def is_supported(g: PlaneGraph, v: int) -> bool:
    """Supported 2-thread vertex: its adjacent anchor also anchors a 1- or 3-thread."""
    t = g.thread_of.get(v)
    if t is None or t.kind != 2:
        raise NotOn2Thread(f"vertex {v} is not interior to a 2-thread")
    anchor = t.anchors[0] if t.interior[0] == v else t.anchors[1]
    return any(s.kind in (1, 3) for s in g.threads_at(anchor))
