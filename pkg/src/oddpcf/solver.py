"""Exact brute-force oracles for odd and PCF chromatic numbers.

Backtracking with properness propagation plus odd/unique feasibility pruning:
placing the last neighbor of a vertex must leave it an odd (resp. unique)
color or the branch dies, and a vertex with at most one viable color is
always branched on first.  Ties follow a static order (high-degree vertices,
then thread interiors contiguously) so chain conflicts surface next to the
decision that caused them.  Exhaustion proves infeasibility, so results are
exact.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

from .coloring import PartialColoring
from .errors import Exceeds, TooLarge, TooManyTargets
from .plane_graph import PlaneGraph

DEFAULT_GUARD = 40


@dataclass
class SolveResult:
    value: int
    witness: PartialColoring
    nodes: int
    wall_time: float


def _feasible(counts: Counter, want_unique: bool) -> bool:
    if want_unique:
        return any(m == 1 for m in counts.values())
    return any(m % 2 == 1 for m in counts.values())


class _Search:
    def __init__(self, g: PlaneGraph, k: int, want_unique: bool,
                 fixed: dict[int, int] | None = None):
        self.g = g
        self.k = k
        self.want_unique = want_unique
        self.n = g.vertex_count
        self.color = [0] * self.n
        self.remaining_nbrs = [g.degree(v) for v in range(self.n)]
        self.nbr_counts = [Counter() for _ in range(self.n)]
        self.nodes = 0
        self.fixed = dict(fixed or {})
        self.order = self._static_order()
        self.symmetry_budget = 0 if fixed else 2   # first vertex 1 color, second 2

    def _static_order(self) -> list[int]:
        # 3+-vertices by decreasing degree, then each thread contiguously:
        # conflicts on a chain surface next to the decision that caused them
        hubs = sorted((v for v in range(self.n) if self.g.degree(v) >= 3),
                      key=lambda v: (-self.g.degree(v), v))
        order = list(hubs)
        seen = set(order)
        for t in self.g.threads:
            order.extend(v for v in t.interior if v not in seen)
            seen.update(t.interior)
        order.extend(v for v in range(self.n) if v not in seen)
        return order

    def run(self) -> dict[int, int] | None:
        for v, c in self.fixed.items():
            if not self._place(v, c):
                return None
        if self._extend():
            return {v: self.color[v] for v in range(self.n) if self.color[v]}
        return None

    def _allowed(self, v: int) -> list[int]:
        # dead once its own neighborhood is complete but infeasible
        if self.remaining_nbrs[v] == 0 and self.g.degree(v) > 0 \
                and not _feasible(self.nbr_counts[v], self.want_unique):
            return []
        # proper, and viable for every neighbor whose last open slot this is
        used = {self.color[w] for w in self.g.neighbors[v] if self.color[w]}
        out = []
        for c in range(1, self.k + 1):
            if c in used:
                continue
            ok = True
            for w in self.g.neighbors[v]:
                if self.color[w] and self.remaining_nbrs[w] == 1:
                    cnt = self.nbr_counts[w]
                    cnt[c] += 1
                    feasible = _feasible(cnt, self.want_unique)
                    cnt[c] -= 1
                    if not feasible:
                        ok = False
                        break
            if ok:
                out.append(c)
        return out

    def _place(self, v: int, c: int) -> bool:
        if any(self.color[w] == c for w in self.g.neighbors[v]):
            return False
        self.color[v] = c
        ok = True
        for w in self.g.neighbors[v]:
            self.nbr_counts[w][c] += 1
            self.remaining_nbrs[w] -= 1
            if (self.remaining_nbrs[w] == 0 and self.color[w]
                    and not _feasible(self.nbr_counts[w], self.want_unique)):
                ok = False
        if self.remaining_nbrs[v] == 0 and self.g.degree(v) > 0 \
                and not _feasible(self.nbr_counts[v], self.want_unique):
            ok = False
        return ok

    def _unplace(self, v: int):
        c = self.color[v]
        self.color[v] = 0
        for w in self.g.neighbors[v]:
            self.nbr_counts[w][c] -= 1
            if self.nbr_counts[w][c] == 0:
                del self.nbr_counts[w][c]
            self.remaining_nbrs[w] += 1

    def _extend(self) -> bool:
        # forced or dead vertices first, otherwise static order
        best, best_allowed = None, None
        for v in self.order:
            if self.color[v]:
                continue
            allowed = self._allowed(v)
            if not allowed:
                return False
            if len(allowed) == 1:
                best, best_allowed = v, allowed
                break
            if best is None:
                best, best_allowed = v, allowed
        if best is None:
            return True
        if self.symmetry_budget == 2:
            best_allowed = best_allowed[:1]
        elif self.symmetry_budget == 1:
            best_allowed = best_allowed[:2]
        if self.symmetry_budget:
            self.symmetry_budget -= 1
        for c in best_allowed:
            self.nodes += 1
            if self._place(best, c):
                if self._extend():
                    return True
                self._unplace(best)
            elif self.color[best]:
                self._unplace(best)   # placed but infeasible
        return False


def find_coloring(g: PlaneGraph, k: int, mode: str = "odd",
                  fixed: dict[int, int] | None = None) -> PartialColoring | None:
    """One total valid k-coloring extending ``fixed``, or None."""
    search = _Search(g, k, want_unique=(mode == "pcf"), fixed=fixed)
    result = search.run()
    if result is None:
        return None
    return PartialColoring(result, k=k)


def _chi(g: PlaneGraph, max_k: int, mode: str, guard: int) -> SolveResult:
    if g.vertex_count > guard:
        raise TooLarge(f"{g.vertex_count} vertices exceeds guard {guard}")
    start = time.perf_counter()
    nodes = 0
    for k in range(1, max_k + 1):
        search = _Search(g, k, want_unique=(mode == "pcf"))
        result = search.run()
        nodes += search.nodes
        if result is not None:
            witness = PartialColoring(result, k=k)
            return SolveResult(k, witness, nodes, time.perf_counter() - start)
    raise Exceeds(max_k)


def chi_odd(g: PlaneGraph, max_k: int = 8, guard: int = DEFAULT_GUARD) -> SolveResult:
    """Smallest k <= max_k admitting an odd k-coloring."""
    return _chi(g, max_k, "odd", guard)


def chi_pcf(g: PlaneGraph, max_k: int = 8, guard: int = DEFAULT_GUARD) -> SolveResult:
    """Smallest k <= max_k admitting a PCF k-coloring."""
    return _chi(g, max_k, "pcf", guard)


def extend_exhaustive(g: PlaneGraph, phi: PartialColoring, targets,
                      k: int = 4, mode: str = "odd",
                      limit: int = 200_000) -> list[PartialColoring]:
    """All assignments of ``targets`` whose union with phi passes the partial
    checker; ground truth for the constructive extension procedures."""
    from itertools import product

    from .coloring import is_odd_coloring, is_pcf_coloring
    from .errors import ImproperColoring

    targets = list(targets)
    if len(targets) > 12:
        raise TooManyTargets(f"{len(targets)} targets exceeds the bound of 12")
    check = is_odd_coloring if mode == "odd" else is_pcf_coloring

    def valid(cand):
        try:
            return bool(check(g, cand))
        except ImproperColoring:
            return False

    if not targets:
        return [phi] if valid(phi) else []
    out = []
    for combo in product(range(1, k + 1), repeat=len(targets)):
        cand = phi.with_colors(dict(zip(targets, combo)))
        if valid(cand):
            out.append(cand)
            if len(out) >= limit:
                break
    return out
