"""Shared fixture builders for the test suite."""

from __future__ import annotations

from itertools import product

import pytest

from oddpcf.coloring import PartialColoring
from oddpcf.plane_graph import PlaneGraph, build_from_rotation, embed


def cycle(n: int) -> PlaneGraph:
    return build_from_rotation([[(i - 1) % n, (i + 1) % n] for i in range(n)])


def path(n: int) -> PlaneGraph:
    table = [[1]] + [[i - 1, i + 1] for i in range(1, n - 1)] + [[n - 2]]
    return build_from_rotation(table)


class GraphBuilder:
    """Incremental edge-list builder; embed() picks the faces."""

    def __init__(self):
        self.edges = []
        self.n = 0

    def vertex(self) -> int:
        v = self.n
        self.n += 1
        return v

    def edge(self, u, v):
        self.edges.append((u, v))
        self.n = max(self.n, u + 1, v + 1)

    def chain(self, u, w, interior: int) -> list[int]:
        """Path from u to w through ``interior`` fresh degree-2 vertices."""
        mids = [self.vertex() for _ in range(interior)]
        nodes = [u] + mids + [w]
        for a, b in zip(nodes, nodes[1:]):
            self.edge(a, b)
        return mids

    def pendants(self, u, count: int) -> list[int]:
        out = []
        for _ in range(count):
            v = self.vertex()
            self.edge(u, v)
            out.append(v)
        return out

    def build(self) -> PlaneGraph:
        return embed(self.edges, vertex_count=self.n)


def anchored_thread_fixture(kind: int, cu: int, cw: int = 1, odd_w: int = 2):
    """A k-thread between anchors u and w plus colored pendants realizing
    phi(w)=cw with odd color set {odd_w}; u carries two uncolored pendants."""
    b = GraphBuilder()
    u = b.vertex()
    w = b.vertex()
    interior = b.chain(u, w, kind)
    filler = next(c for c in range(1, 5) if c not in (cw, odd_w))
    z = b.pendants(w, 3)
    b.pendants(u, 2)
    g = b.build()
    phi = PartialColoring({u: cu, w: cw, z[0]: odd_w, z[1]: filler, z[2]: filler})
    thread = next(t for t in g.threads if set(t.anchors) == {u, w})
    return g, phi, thread, u, w, interior


def ring_with_pendants(n: int, pumps: dict[int, int]) -> PlaneGraph:
    """Cycle of length n with ``pumps[i]`` pendant leaves at ring position i,
    all placed on one side so the other face keeps length n."""
    ring_rows = []
    pendant_rows = []
    nxt = n
    for i in range(n):
        ids = list(range(nxt, nxt + pumps.get(i, 0)))
        nxt += len(ids)
        ring_rows.append([(i - 1) % n] + ids + [(i + 1) % n])
        pendant_rows.extend([i] for _ in ids)
    return build_from_rotation(ring_rows + [row for row in pendant_rows])


class AnnulusBuilder:
    """Leaf-free fixtures: an inner ring whose clean face is preserved, with
    chains running outward from ring positions to a padded auxiliary cycle.

    Every auxiliary vertex sits on the outer cycle (base degree 2); chains
    from the ring raise the touched ones to 3+.  Spacing pads keep auxiliary
    2-runs short so the graph has no 4+-thread and no 1-vertex.
    """

    def __init__(self, ring_size: int):
        self.ring_size = ring_size
        self.next_id = ring_size
        self.chains = []          # (ring_pos, [interior ids], slot)
        self.outer_slots = 0

    def _fresh(self, count):
        ids = list(range(self.next_id, self.next_id + count))
        self.next_id += count
        return ids

    def chain_out(self, ring_pos: int, interior: int, slot: int | None = None) -> int:
        """Chain from a ring vertex through ``interior`` fresh 2-vertices to an
        outer-cycle vertex; a fresh outer slot unless ``slot`` reuses one."""
        mids = self._fresh(interior)
        if slot is None:
            slot = self.outer_slots
            self.outer_slots += 1
        self.chains.append((ring_pos, mids, slot))
        return slot

    def build(self, pad: int = 2) -> PlaneGraph:
        # with three or more disjoint chains to the outer cycle, every planar
        # embedding keeps the inner ring as a face
        assert self.outer_slots >= 3
        outer = self._fresh(self.outer_slots * (1 + pad))
        self.anchor = {s: outer[s * (1 + pad)] for s in range(self.outer_slots)}
        edges = [(i, (i + 1) % self.ring_size) for i in range(self.ring_size)]
        m = len(outer)
        edges += [(outer[i], outer[(i + 1) % m]) for i in range(m)]
        for ring_pos, mids, slot in self.chains:
            nodes = [ring_pos] + mids + [self.anchor[slot]]
            edges += list(zip(nodes, nodes[1:]))
        g = embed(edges, vertex_count=self.next_id)
        assert any(f.length == self.ring_size
                   and set(f.vertices) == set(range(self.ring_size))
                   for f in g.faces)
        return g


def all_colorings(vertices, k=4):
    vs = list(vertices)
    for combo in product(range(1, k + 1), repeat=len(vs)):
        yield dict(zip(vs, combo))


@pytest.fixture
def c10():
    return cycle(10)
