"""Seeded random plane graphs with a girth floor.

A random planar skeleton (Hamiltonian cycle plus chords kept under a
planarity test) is subdivided edge by edge until every cycle reaches the
target girth.  Subdivision counts are randomized inside 1..3 so the graphs
naturally contain 1-, 2- and 3-threads; policies tweak the balance:

    mixed        randomized counts with a repair loop (default)
    uniform      the same minimal count on every edge
    long         like mixed but also injects a few 4+-threads
    even         even-degree skeleton (stacked antiprism); every face of the
                 result has an array representation, so the discharging rule
                 systems always apply
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .errors import InvalidSpec
from .plane_graph import PlaneGraph, build_from_rotation, girth

_POLICIES = ("mixed", "uniform", "long", "even")


@dataclass(frozen=True)
class GeneratorSpec:
    skeleton: int
    girth: int
    policy: str = "mixed"
    seed: int = 0
    chord_tries: int | None = None

    def validate(self):
        if self.skeleton < 4:
            raise InvalidSpec("skeleton needs at least 4 vertices")
        if self.girth < 3:
            raise InvalidSpec("target girth must be at least 3")
        if self.policy not in _POLICIES:
            raise InvalidSpec(f"unknown policy {self.policy!r}")


def _skeleton_mixed(spec: GeneratorSpec, rng: random.Random) -> nx.Graph:
    n = spec.skeleton
    order = list(range(n))
    rng.shuffle(order)
    g = nx.Graph()
    g.add_edges_from((order[i], order[(i + 1) % n]) for i in range(n))
    tries = spec.chord_tries if spec.chord_tries is not None else n
    for _ in range(tries):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or g.has_edge(u, v):
            continue
        g.add_edge(u, v)
        if not nx.check_planarity(g)[0]:
            g.remove_edge(u, v)
    return g


def _skeleton_even(spec: GeneratorSpec, rng: random.Random) -> nx.Graph:
    # antiprism: 4-regular, planar, all degrees even
    m = max(3, spec.skeleton // 2)
    g = nx.Graph()
    for i in range(m):
        g.add_edge(i, (i + 1) % m)
        g.add_edge(m + i, m + (i + 1) % m)
        g.add_edge(i, m + i)
        g.add_edge(i, m + (i + 1) % m)
    return g


def _special_k4(spec: GeneratorSpec) -> nx.Graph | None:
    if spec.skeleton == 4:
        return nx.complete_graph(4)
    return None


def generate(spec: GeneratorSpec) -> PlaneGraph:
    """Deterministic per seed; output is connected, simple, plane, girth >= g."""
    spec.validate()
    rng = random.Random(spec.seed)

    if spec.policy == "even":
        skeleton = _skeleton_even(spec, rng)
    else:
        skeleton = _special_k4(spec) or _skeleton_mixed(spec, rng)

    edges = sorted(tuple(sorted(e)) for e in skeleton.edges)
    counts = _subdivision_counts(skeleton, edges, spec, rng)
    if spec.policy == "long":
        for e in rng.sample(edges, max(1, len(edges) // 8)):
            counts[e] += rng.randint(1, 2)

    return _subdivide_and_embed(skeleton, counts)


def _subdivision_counts(skeleton: nx.Graph, edges, spec: GeneratorSpec,
                        rng: random.Random) -> dict:
    base_girth = _nx_girth(skeleton)
    if spec.policy == "uniform":
        per_edge = max(0, -(-spec.girth // base_girth) - 1)
        return {e: per_edge for e in edges}

    counts = {}
    for u, v in edges:
        if spec.policy != "even" and (skeleton.degree(u) % 2 or skeleton.degree(v) % 2):
            counts[(u, v)] = 1
        else:
            counts[(u, v)] = rng.randint(1, 3)

    # repair: lengthen shortest cycles until the girth floor holds
    for _ in range(10_000):
        cycle = _short_cycle(skeleton, counts, spec.girth)
        if cycle is None:
            return counts
        bumpable = [e for e in cycle if counts[e] < 3]
        target = min(bumpable, default=None, key=lambda e: (counts[e], e))
        if target is None:
            target = min(cycle, key=lambda e: (counts[e], e))
        counts[target] += 1
    raise InvalidSpec("girth repair did not converge")


def _short_cycle(skeleton: nx.Graph, counts: dict, target: int):
    """Some cycle of subdivided length < target, as a list of skeleton edges."""
    weight = {e: 1 + counts[e] for e in counts}
    best, best_len = None, target
    for u, v in counts:
        w_uv = weight[(u, v)]
        if w_uv >= best_len:
            continue
        try:
            path = nx.shortest_path(
                _without_edge(skeleton, u, v), u, v,
                weight=lambda a, b, _d: weight[tuple(sorted((a, b)))])
        except nx.NetworkXNoPath:
            continue
        length = w_uv + sum(weight[tuple(sorted((path[i], path[i + 1])))]
                            for i in range(len(path) - 1))
        if length < best_len:
            best_len = length
            best = [tuple(sorted((u, v)))] + [tuple(sorted((path[i], path[i + 1])))
                                              for i in range(len(path) - 1)]
    return best


def _without_edge(g: nx.Graph, u, v) -> nx.Graph:
    h = g.copy()
    h.remove_edge(u, v)
    return h


def _nx_girth(g: nx.Graph) -> int:
    try:
        gv = nx.girth(g)
        return int(gv) if gv != float("inf") else 3
    except Exception:
        return 3


def _subdivide_and_embed(skeleton: nx.Graph, counts: dict) -> PlaneGraph:
    ok, planar = nx.check_planarity(skeleton)
    if not ok:
        raise InvalidSpec("skeleton is not planar")
    n = skeleton.number_of_nodes()
    relabel = {v: i for i, v in enumerate(sorted(skeleton.nodes))}
    table = [[] for _ in range(n)]
    next_id = n
    chains = {}
    for v in sorted(skeleton.nodes):
        for w in reversed(list(planar.neighbors_cw_order(v))):
            e = tuple(sorted((v, w)))
            c = counts[e]
            if c == 0:
                table[relabel[v]].append(relabel[w])
                continue
            if e not in chains:
                chains[e] = list(range(next_id, next_id + c))
                next_id += c
            chain = chains[e] if v == e[0] else list(reversed(chains[e]))
            table[relabel[v]].append(chain[0])
    table.extend([] for _ in range(next_id - n))
    for e, chain in chains.items():
        path = [relabel[e[0]]] + chain + [relabel[e[1]]]
        for i, mid in enumerate(chain):
            table[mid] = [path[i], path[i + 2]]
    return build_from_rotation(table)
