import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from graphon_cospectra import (
    CycleProfile,
    GuardExceeded,
    Refusal,
    SimpleGraph,
    Spectrum,
    StepGraphon,
    cycle_density_spectral,
    cycle_profile,
    decompose,
    density_direct,
    graph_density_consistency,
    graph_to_graphon,
    hom_count,
)
from graphon_cospectra import densities

from .conftest import random_graphon, step_graphons
from .oracles import cycle_density_by_trace, density_by_loops, hom_by_brute_force

K2 = SimpleGraph.complete(2)
EDGE = SimpleGraph(2, [(0, 1)])


class TestDensityDirect:
    def test_edge_in_constant(self, half):
        assert density_direct(EDGE, half) == 0.5

    def test_c4_in_k2(self):
        # hom(C4, K2) / 2^4 = trace(A^4) / 16 = 2 / 16
        assert density_direct(SimpleGraph.cycle(4), graph_to_graphon(K2)) == pytest.approx(1 / 8, abs=1e-15)

    def test_c3_in_k2(self):
        assert density_direct(SimpleGraph.cycle(3), graph_to_graphon(K2)) == 0.0

    def test_single_vertex(self, rng):
        assert density_direct(SimpleGraph(1), random_graphon(rng, 3)) == pytest.approx(1.0)

    def test_matches_loop_oracle(self, rng):
        patterns = [SimpleGraph.cycle(3), SimpleGraph.path(4), SimpleGraph.complete(4), SimpleGraph(4, [(0, 1), (2, 3)])]
        for _ in range(10):
            w = random_graphon(rng, int(rng.integers(1, 4)))
            for f in patterns:
                ref = density_by_loops(f.sorted_edges(), f.n, w.weights.tolist(), w.values.tolist())
                assert density_direct(f, w) == pytest.approx(ref, rel=1e-12, abs=1e-15)

    def test_guard(self, monkeypatch):
        monkeypatch.setattr(densities, "ENUMERATION_LIMIT", 100)
        with pytest.raises(GuardExceeded, match="100"):
            density_direct(SimpleGraph.cycle(5), StepGraphon([1 / 3] * 3, np.ones((3, 3))))

    def test_chunked_enumeration(self, monkeypatch, rng):
        w = random_graphon(rng, 3)
        whole = density_direct(SimpleGraph.cycle(6), w)
        monkeypatch.setattr(densities, "_CHUNK", 7)
        assert density_direct(SimpleGraph.cycle(6), w) == pytest.approx(whole, rel=1e-13)

    @settings(max_examples=40, deadline=None)
    @given(step_graphons(max_blocks=4))
    def test_monotone(self, w):
        bigger = StepGraphon(w.weights, np.minimum(1.0, w.values + 0.1))
        for f in (SimpleGraph.cycle(3), SimpleGraph.path(3), SimpleGraph.cycle(4)):
            assert density_direct(f, bigger) >= density_direct(f, w) - 1e-15


class TestCycleSpectral:
    def test_examples(self):
        s1 = Spectrum.from_eigenvalues([0.5])
        s2 = Spectrum.from_eigenvalues([0.5, -0.5])
        assert cycle_density_spectral(3, s1) == 0.125
        assert cycle_density_spectral(3, s2) == 0.0
        assert cycle_density_spectral(4, s2) == 0.125

    def test_rejects_short_cycles(self):
        with pytest.raises(Refusal):
            cycle_density_spectral(2, Spectrum.from_eigenvalues([0.5]))

    @settings(max_examples=60, deadline=None)
    @given(step_graphons(max_blocks=5))
    def test_dual_path(self, w):
        s = decompose(w).spectrum
        for k in range(3, 9):
            direct = density_direct(SimpleGraph.cycle(k), w)
            assert abs(direct - cycle_density_spectral(k, s)) < 1e-9
            assert abs(direct - cycle_density_by_trace(k, w.weights, w.values)) < 1e-12


class TestCycleProfile:
    def test_constant(self, half):
        assert cycle_profile(half, 5).values == pytest.approx((0.125, 0.0625, 0.03125))

    def test_half_square_equals_constant(self, half, half_square):
        assert cycle_profile(half_square, 5).values == pytest.approx(cycle_profile(half, 5).values, abs=1e-15)

    def test_k2(self):
        # power sums of {1/2, -1/2}
        p = cycle_profile(graph_to_graphon(K2), 6)
        assert p.values == pytest.approx((0.0, 0.125, 0.0, 0.03125), abs=1e-15)
        assert p[4] == pytest.approx(0.125) and p.k_max == 6

    def test_default_length_and_bounds(self, rng):
        p = cycle_profile(random_graphon(rng, 4))
        assert p.k_min == 3 and p.k_max == 16
        assert all(0.0 <= x <= 1.0 for x in p.values)

    def test_round_trip(self, rng):
        p = cycle_profile(random_graphon(rng, 3), 8)
        assert CycleProfile.from_json(p.to_json()) == p

    def test_rejects_small_kmax(self, half):
        with pytest.raises(Refusal):
            cycle_profile(half, 2)


class TestHomCount:
    def test_examples(self):
        assert hom_count(SimpleGraph.cycle(3), SimpleGraph.complete(3)) == 6
        assert hom_count(SimpleGraph.cycle(4), K2) == 2

    def test_edge_counts_twice_edges(self, rng):
        for _ in range(10):
            a = rng.integers(0, 2, (6, 6))
            g = SimpleGraph.from_adjacency(np.triu(a, 1) + np.triu(a, 1).T)
            assert hom_count(EDGE, g) == 2 * g.num_edges

    def test_cycles_equal_trace(self, rng):
        for _ in range(10):
            a = np.triu(rng.integers(0, 2, (6, 6)), 1)
            a = a + a.T
            g = SimpleGraph.from_adjacency(a)
            for k in range(3, 7):
                assert hom_count(SimpleGraph.cycle(k), g) == np.trace(np.linalg.matrix_power(a, k))

    def test_matches_brute_force(self, rng):
        patterns = [SimpleGraph.path(3), SimpleGraph(4, [(0, 1), (2, 3)]), SimpleGraph(3), SimpleGraph.complete(4)]
        for _ in range(5):
            a = np.triu(rng.integers(0, 2, (5, 5)), 1)
            g = SimpleGraph.from_adjacency(a + a.T)
            for f in patterns:
                assert hom_count(f, g) == hom_by_brute_force(f.sorted_edges(), f.n, (a + a.T).tolist())

    def test_degenerate_sizes(self):
        assert hom_count(SimpleGraph(0), K2) == 1
        assert hom_count(EDGE, SimpleGraph(0)) == 0

    def test_guard(self, monkeypatch):
        monkeypatch.setattr(densities, "ENUMERATION_LIMIT", 10)
        with pytest.raises(GuardExceeded):
            hom_count(SimpleGraph.cycle(3), SimpleGraph.complete(3))


class TestConsistency:
    def test_examples(self, rng):
        assert graph_density_consistency(SimpleGraph.cycle(3), SimpleGraph.complete(3)) < 1e-12
        assert graph_density_consistency(SimpleGraph.cycle(4), K2) < 1e-12
        a = np.triu(rng.integers(0, 2, (6, 6)), 1)
        assert graph_density_consistency(SimpleGraph.cycle(5), SimpleGraph.from_adjacency(a + a.T)) < 1e-12

    def test_all_small_graphs(self):
        n = 4
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = SimpleGraph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            assert graph_density_consistency(SimpleGraph.path(3), g) < 1e-12
