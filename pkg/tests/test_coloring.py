from __future__ import annotations

import random
from collections import Counter
from itertools import combinations_with_replacement, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddpcf.coloring import (
    ColorMultiset,
    PartialColoring,
    extend_over_2thread,
    extend_over_3thread,
    is_odd_coloring,
    is_odd_coloring_excluding,
    is_pcf_coloring,
    odd_colors,
    parity_flip,
    unique_colors,
)
from oddpcf.errors import CannotExtend, FromAbsent, ImproperColoring, SameColor
from oddpcf.generator import GeneratorSpec, generate
from oddpcf.plane_graph import embed
from oddpcf.solver import extend_exhaustive, find_coloring

from conftest import GraphBuilder, cycle


def star(leaf_count):
    return embed([(0, i + 1) for i in range(leaf_count)])


class TestOddUniqueQueries:
    def _colored_star(self, leaf_colors, k=4):
        g = star(len(leaf_colors))
        phi = PartialColoring({i + 1: c for i, c in enumerate(leaf_colors)}, k=k)
        return g, phi

    @pytest.mark.parametrize("colors,odd,unique", [
        ((1, 1, 2), {2}, {2}),
        ((1, 1, 2, 2), set(), set()),
        ((1, 2, 3), {1, 2, 3}, {1, 2, 3}),
        ((1, 1, 1), {1}, set()),
        ((1, 1, 1, 2), {1, 2}, {2}),
    ])
    def test_examples(self, colors, odd, unique):
        g, phi = self._colored_star(colors)
        assert odd_colors(g, phi, 0) == odd
        assert unique_colors(g, phi, 0) == unique

    def test_unassigned_neighbors_absent(self):
        g = star(3)
        phi = PartialColoring({1: 2, 2: 2})
        assert odd_colors(g, phi, 0) == set()
        assert unique_colors(g, phi, 0) == set()


class TestCheckers:
    def test_c5_five_colors_is_odd(self):
        g = cycle(5)
        phi = PartialColoring({i: i + 1 for i in range(5)}, k=5)
        assert is_odd_coloring(g, phi)

    def test_c6_alternating_fails_with_witness(self):
        g = cycle(6)
        phi = PartialColoring({i: 1 + i % 2 for i in range(6)})
        res = is_odd_coloring(g, phi)
        assert not res and res.failing_vertex is not None

    def test_c6_three_colors_is_odd(self):
        g = cycle(6)
        phi = PartialColoring({i: 1 + i % 3 for i in range(6)})
        assert is_odd_coloring(g, phi)

    def test_improper_raises_with_edge(self):
        g = cycle(4)
        phi = PartialColoring({0: 1, 1: 1})
        with pytest.raises(ImproperColoring) as err:
            is_odd_coloring(g, phi)
        assert err.value.edge == (0, 1)

    def test_pcf_c5(self):
        g = cycle(5)
        phi = PartialColoring({i: i + 1 for i in range(5)}, k=5)
        assert is_pcf_coloring(g, phi)

    def test_pcf_star_center_conflict(self):
        g = star(3)
        assert not is_pcf_coloring(g, PartialColoring({0: 1, 1: 2, 2: 2, 3: 2}))
        assert is_pcf_coloring(g, PartialColoring({0: 1, 1: 2, 2: 2, 3: 3}))

    def test_partial_semantics_exempts_frontier(self):
        g = cycle(6)
        # vertex 0's neighborhood not fully assigned: exempt even though both
        # assigned neighbors clash in color
        phi = PartialColoring({1: 2, 0: 1})
        assert is_odd_coloring(g, phi)

    def test_excluding_checks_anchors_against_survivors(self):
        g = cycle(6)
        phi = PartialColoring({0: 1, 1: 2, 2: 3, 3: 4})
        # viewed inside g - {4, 5}: vertices 0 and 3 have degree 1 there
        assert is_odd_coloring_excluding(g, phi, {4, 5})

    def test_excluding_is_stricter_than_partial_semantics(self):
        g = embed([(0, 1), (1, 2), (1, 3)])
        phi = PartialColoring({1: 1, 2: 2, 3: 2})
        assert is_odd_coloring(g, phi)                    # vertex 0 unassigned
        res = is_odd_coloring_excluding(g, phi, {0})
        assert not res and res.failing_vertex == 1


class TestParityFlip:
    def test_flip_creates_odd(self):
        x = ColorMultiset.of([1, 1, 2, 2])
        res = parity_flip(x, 1, 3)
        assert res.flipped_qualifies and res.flipped_odd in {1, 3}

    def test_original_already_odd(self):
        res = parity_flip(ColorMultiset.of([1, 2]), 2, 3)
        assert res.original_qualifies

    def test_errors(self):
        with pytest.raises(FromAbsent):
            parity_flip(ColorMultiset.of([1]), 2, 3)
        with pytest.raises(SameColor):
            parity_flip(ColorMultiset.of([1]), 1, 1)

    def test_exhaustive_small_multisets(self):
        # every multiset over [4] of size <= 6, every legal flip
        for size in range(1, 7):
            for combo in combinations_with_replacement(range(1, 5), size):
                x = ColorMultiset.of(combo)
                for frm in set(combo):
                    for to in range(1, 5):
                        if to == frm:
                            continue
                        res = parity_flip(x, frm, to)
                        assert res.original_qualifies or res.flipped_qualifies

    @given(st.lists(st.integers(min_value=1, max_value=8), min_size=1,
                    max_size=25),
           st.integers(min_value=0, max_value=24),
           st.integers(min_value=1, max_value=8))
    @settings(max_examples=300)
    def test_property_arbitrary_multisets(self, elements, pick, to):
        frm = elements[pick % len(elements)]
        x = ColorMultiset.of(elements)
        if to == frm:
            with pytest.raises(SameColor):
                parity_flip(x, frm, to)
            return
        res = parity_flip(x, frm, to)
        assert res.original_qualifies or res.flipped_qualifies
        if res.original_qualifies:
            assert x.counts[res.original_odd] % 2 == 1


class TestOddUniqueEquivalenceAtEvenSmallDegrees:
    def test_lemma_on_random_proper_colorings(self):
        rng = random.Random(7)
        checked = 0
        for seed in range(40):
            g = generate(GeneratorSpec(skeleton=8, girth=6, seed=seed))
            for _ in range(15):
                phi = {}
                for v in range(g.vertex_count):
                    taken = {phi[w] for w in g.neighbors[v] if w in phi}
                    phi[v] = rng.choice([c for c in range(1, 5) if c not in taken])
                pc = PartialColoring(phi)
                for v in range(g.vertex_count):
                    if g.degree(v) in (2, 4):
                        odd = bool(odd_colors(g, pc, v))
                        unique = bool(unique_colors(g, pc, v))
                        assert odd == unique
                        checked += 1
        assert checked >= 10_000

    def test_unique_implies_odd_per_color(self):
        for colors in product(range(1, 5), repeat=5):
            m = Counter(colors)
            for c, mult in m.items():
                if mult == 1:
                    assert mult % 2 == 1

    def test_unique_subset_of_odd_on_colorings(self):
        rng = random.Random(5)
        for seed in range(6):
            g = generate(GeneratorSpec(skeleton=7, girth=8, seed=seed))
            phi = {}
            for v in range(g.vertex_count):
                taken = {phi[w] for w in g.neighbors[v] if w in phi}
                phi[v] = rng.choice([c for c in range(1, 5) if c not in taken])
            pc = PartialColoring(phi)
            for v in range(g.vertex_count):
                assert unique_colors(g, pc, v) <= odd_colors(g, pc, v)


def two_thread_fixture(cy1, cy2, odd1, odd2):
    """2-thread x1x2 between anchors y1, y2; pendant colors pin the anchors'
    odd-color sets exactly to {odd1}, {odd2}."""
    b = GraphBuilder()
    y1, y2 = b.vertex(), b.vertex()
    x1, x2 = b.chain(y1, y2, 2)
    pend1 = b.pendants(y1, 3)
    pend2 = b.pendants(y2, 3)
    g = b.build()
    f1 = next(c for c in range(1, 5) if c not in (cy1, odd1))
    f2 = next(c for c in range(1, 5) if c not in (cy2, odd2))
    phi = PartialColoring({y1: cy1, y2: cy2,
                           pend1[0]: odd1, pend1[1]: f1, pend1[2]: f1,
                           pend2[0]: odd2, pend2[1]: f2, pend2[2]: f2})
    t = next(t for t in g.threads if t.kind == 2)
    return g, phi, t, (x1, x2)


def three_thread_fixture(cy1, cy2, odd1, odd2):
    b = GraphBuilder()
    y1, y2 = b.vertex(), b.vertex()
    mids = b.chain(y1, y2, 3)
    pend1 = b.pendants(y1, 3)
    pend2 = b.pendants(y2, 3)
    g = b.build()
    f1 = next(c for c in range(1, 5) if c not in (cy1, odd1))
    f2 = next(c for c in range(1, 5) if c not in (cy2, odd2))
    phi = PartialColoring({y1: cy1, y2: cy2,
                           pend1[0]: odd1, pend1[1]: f1, pend1[2]: f1,
                           pend2[0]: odd2, pend2[1]: f2, pend2[2]: f2})
    t = next(t for t in g.threads if t.kind == 3)
    return g, phi, t, tuple(mids)


class TestExtendOver2Thread:
    def test_equal_anchor_colors_succeeds(self):
        g, phi, t, xs = two_thread_fixture(1, 1, 2, 3)
        ext = extend_over_2thread(g, phi, t)
        assert is_odd_coloring_excluding(g, ext, set())
        assert all(x in ext for x in xs)

    def test_blocking_pattern(self):
        g, phi, t, _ = two_thread_fixture(1, 2, 3, 3)
        with pytest.raises(CannotExtend) as err:
            extend_over_2thread(g, phi, t)
        assert set(err.value.pattern["anchor_colors"]) == {1, 2}
        assert err.value.pattern["odd_color"] == 3

    def test_agrees_with_exhaustive_search(self):
        for seed in range(25):
            g = generate(GeneratorSpec(skeleton=5, girth=10, seed=seed))
            threads = [t for t in g.threads if t.kind == 2]
            if not threads:
                continue
            t = threads[0]
            base = find_coloring(g, 4, "odd")        # total odd coloring
            phi = base.without(t.interior)
            if not is_odd_coloring_excluding(g, phi, t.interior):
                continue
            truth = extend_exhaustive(g, phi, list(t.interior), 4, "odd")
            try:
                ext = extend_over_2thread(g, phi, t)
                assert truth, "constructive success but exhaustive found none"
                assert is_odd_coloring(g, ext)
            except CannotExtend:
                assert not truth


class TestExtendOver3Thread:
    def test_odd_color_differs_from_far_anchor_succeeds(self):
        g, phi, t, _ = three_thread_fixture(1, 2, 3, 4)
        ext = extend_over_3thread(g, phi, t)
        assert is_odd_coloring(g, ext)

    def test_cross_pattern_blocks(self):
        g, phi, t, _ = three_thread_fixture(1, 2, 2, 1)
        with pytest.raises(CannotExtend):
            extend_over_3thread(g, phi, t)

    def test_agrees_with_exhaustive_search(self):
        for seed in range(25):
            g = generate(GeneratorSpec(skeleton=5, girth=10, seed=seed))
            threads = [t for t in g.threads if t.kind == 3]
            if not threads:
                continue
            t = threads[0]
            base = find_coloring(g, 4, "odd")
            phi = base.without(t.interior)
            if not is_odd_coloring_excluding(g, phi, t.interior):
                continue
            truth = extend_exhaustive(g, phi, list(t.interior), 4, "odd")
            try:
                ext = extend_over_3thread(g, phi, t)
                assert truth
                assert is_odd_coloring(g, ext)
            except CannotExtend:
                assert not truth
