import numpy as np
import pytest

from graphon_cospectra import GraphonError, SampleSpec, SimpleGraph, StepGraphon, convergence_report, sample_graph
from graphon_cospectra.sampling import GENERATOR_FAMILY, graph_eigenvalues, sample_adjacency


def test_reproducible(half_square):
    spec = SampleSpec(60, 99, half_square)
    assert sample_graph(spec) == sample_graph(spec)
    assert sample_graph(spec) != sample_graph(SampleSpec(60, 100, half_square))


def test_constant_half_density(half):
    g = sample_graph(SampleSpec(200, 7, half))
    assert abs(g.num_edges / (200 * 199 / 2) - 0.5) < 0.05


def test_extremes():
    assert sample_graph(SampleSpec(12, 1, StepGraphon.constant(1.0))) == SimpleGraph.complete(12)
    assert sample_graph(SampleSpec(12, 1, StepGraphon.constant(0.0))).num_edges == 0


def test_block_structure(half_square):
    a = sample_adjacency(SampleSpec(80, 5, half_square))
    inside = a.sum(axis=1) > 0
    # every edge joins two vertices placed in [0, 1/2]; those form a clique
    k = int(inside.sum())
    assert a.sum() == k * (k - 1)


def test_spec_validation(half):
    with pytest.raises(GraphonError):
        SampleSpec(0, 1, half)
    with pytest.raises(GraphonError):
        SampleSpec(5, -1, half)


def test_expected_edge_count_over_seeds():
    p, n = 0.3, 200
    pairs = n * (n - 1) // 2
    counts = [sample_graph(SampleSpec(n, s, StepGraphon.constant(p))).num_edges for s in range(20)]
    se = np.sqrt(pairs * p * (1 - p)) / np.sqrt(20)
    assert abs(np.mean(counts) - p * pairs) < 3 * se


def test_leading_eigenvalue_trend(half):
    errs = []
    for n in (50, 100, 200, 400):
        lead = [graph_eigenvalues(sample_adjacency(SampleSpec(n, s, half)))[-1] for s in range(5)]
        errs.append(abs(np.mean(lead) - 0.5))
    assert errs[-1] < 0.05
    assert errs[-1] <= errs[0]


class TestConvergenceReport:
    def test_constant_half(self, half):
        rep = convergence_report(half, [200], seed=11)
        assert rep["generator"] == GENERATOR_FAMILY
        (row,) = rep["rows"]
        assert abs(row["top_eigs"][0] - 0.5) < 0.05
        assert abs(row["top_eigs"][1]) < 0.15
        assert len(row["top_eigs"]) == 8
        assert row["mean_gap_lb"] == pytest.approx(abs(0.5 - row["l1"]))
        assert row["l2sq"] == row["l1"]

    def test_half_square(self, half_square):
        (row,) = convergence_report(half_square, [200], seed=11)["rows"]
        assert abs(row["l2sq"] - 0.25) < 0.05

    def test_single_vertex(self, half):
        (row,) = convergence_report(half, [1], seed=0)["rows"]
        assert row["l1"] == row["l2sq"] == 0.0
        assert row["top_eigs"] == [0.0]

    def test_parseval_on_samples(self, half):
        for row in convergence_report(half, [10, 30], seed=2)["rows"]:
            n = row["n"]
            g = sample_graph(SampleSpec(n, 2, half))
            lam = graph_eigenvalues(g.adjacency())
            assert np.sum(lam**2) == pytest.approx(row["l2sq"], abs=1e-12)
