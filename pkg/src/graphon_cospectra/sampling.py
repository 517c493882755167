"""W-random graphs and convergence diagnostics for sampled sequences."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cutnorm import mean_gap_lower_bound
from .errors import GraphonError
from .graphon import SimpleGraph, StepGraphon, graph_to_graphon, l1_norm, l2_norm_sq
from .spectral import symmetric_eigh

# Stream discipline: SeedSequence(seed).spawn(2) -> child 0 draws the vertex
# positions, child 1 the edge coins (one per pair i < j in row-major order).
GENERATOR_FAMILY = "numpy.random.PCG64 via SeedSequence(seed).spawn(2): [positions, edge coins]"
MAX_SAMPLE_VERTICES = 5000


@dataclass(frozen=True)
class SampleSpec:
    n: int
    seed: int
    source: StepGraphon

    def __post_init__(self):
        if self.n < 1:
            raise GraphonError("sample size must be at least 1")
        if self.n > MAX_SAMPLE_VERTICES:
            raise GraphonError(f"sample size above {MAX_SAMPLE_VERTICES}")
        if not 0 <= self.seed < 2**64:
            raise GraphonError("seed must be an unsigned 64-bit integer")


def _streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    pos, coins = np.random.SeedSequence(seed).spawn(2)
    return np.random.Generator(np.random.PCG64(pos)), np.random.Generator(np.random.PCG64(coins))


def sample_adjacency(spec: SampleSpec) -> np.ndarray:
    pos_rng, coin_rng = _streams(spec.seed)
    n = spec.n
    x = pos_rng.random(n)
    blocks = spec.source.partition.locate(x)
    iu, ju = np.triu_indices(n, k=1)
    prob = spec.source.values[blocks[iu], blocks[ju]]
    coins = coin_rng.random(iu.size)
    hit = coins < prob
    a = np.zeros((n, n), dtype=np.int64)
    a[iu[hit], ju[hit]] = 1
    return a + a.T


def sample_graph(spec: SampleSpec) -> SimpleGraph:
    """Draw G(n, W): uniform positions, then independent edges with probability W(x_i, x_j)."""
    return SimpleGraph.from_adjacency(sample_adjacency(spec))


def graph_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of W_G for adjacency matrix ``a``, i.e. of A/n, ascending."""
    n = a.shape[0]
    lam, _ = symmetric_eigh(np.asarray(a, dtype=float) / n)
    return lam


def convergence_report(source: StepGraphon, n_list, seed: int, top: int = 8) -> dict:
    """Norms, leading eigenvalues, and the mean-gap bound of W_{G_n} against ``source``.

    Every n reuses ``seed``. Eigenvalues are listed by decreasing modulus.
    """
    rows = []
    for n in n_list:
        a = sample_adjacency(SampleSpec(int(n), seed, source))
        wg = graph_to_graphon(SimpleGraph.from_adjacency(a))
        lam = graph_eigenvalues(a)
        lead = lam[np.argsort(-np.abs(lam), kind="stable")][:top]
        rows.append(
            {
                "n": int(n),
                "l1": l1_norm(wg),
                "l2sq": l2_norm_sq(wg),
                "top_eigs": [float(x) for x in lead],
                "mean_gap_lb": mean_gap_lower_bound(source, wg),
            }
        )
    return {"generator": GENERATOR_FAMILY, "seed": seed, "rows": rows}
