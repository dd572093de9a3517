"""Text formats: rotation systems, graph6 input, coloring files.

Rotation format: one line per vertex, ``v: n1 n2 ... nk`` listing neighbors
in counterclockwise order; ``#`` starts a comment; blank lines are ignored.
Coloring format: ``v=c`` pairs, one per line.
"""

from __future__ import annotations

import networkx as nx

from .coloring import PartialColoring
from .errors import MalformedRotation
from .plane_graph import PlaneGraph, build_from_rotation, embed


def parse_rotation_text(text: str) -> PlaneGraph:
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise MalformedRotation(f"line {lineno}: expected 'v: n1 n2 ...'")
        head, tail = line.split(":", 1)
        try:
            v = int(head)
            nbrs = [int(tok) for tok in tail.split()]
        except ValueError as exc:
            raise MalformedRotation(f"line {lineno}: {exc}") from None
        if v in rows:
            raise MalformedRotation(f"line {lineno}: vertex {v} listed twice")
        rows[v] = nbrs
    if not rows:
        raise MalformedRotation("no vertex lines found")
    n = max(rows) + 1
    if set(rows) != set(range(n)):
        missing = sorted(set(range(n)) - set(rows))
        raise MalformedRotation(f"missing vertex lines for {missing}")
    return build_from_rotation([rows[v] for v in range(n)])


def render_rotation(g: PlaneGraph) -> str:
    lines = [f"{v}: " + " ".join(map(str, g.neighbors[v]))
             for v in range(g.vertex_count)]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> PlaneGraph:
    """graph6 accepted for abstract input; embedded by the planarity algorithm."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    nxg = nx.from_graph6_bytes(s.encode("ascii"))
    return embed(list(nxg.edges), vertex_count=nxg.number_of_nodes())


def load_graph(text: str, fmt: str = "rot") -> PlaneGraph:
    if fmt == "rot":
        return parse_rotation_text(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def parse_coloring_text(text: str, k: int = 4) -> PartialColoring:
    assign = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'v=c'")
        v, c = line.split("=", 1)
        assign[int(v)] = int(c)
    return PartialColoring(assign, k=k)


def render_coloring(phi: PartialColoring) -> str:
    return "\n".join(f"{v}={c}" for v, c in sorted(phi.as_dict().items())) + "\n"
