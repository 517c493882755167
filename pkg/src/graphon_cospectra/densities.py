"""Homomorphism densities, homomorphism counts, and cycle-density profiles."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import GraphonError, GuardExceeded, Refusal
from .graphon import SimpleGraph, StepGraphon, graph_to_graphon
from .spectral import Spectrum, decompose

ENUMERATION_LIMIT = 10**8
_CHUNK = 1 << 18


def _mixed_radix_chunks(m: int, v: int):
    """Yield blocks of assignments [m]^v in mixed-radix order, first vertex most significant."""
    total = m**v
    powers = m ** np.arange(v - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        yield (codes[:, None] // powers[None, :]) % m


def density_direct(f: SimpleGraph, w: StepGraphon) -> float:
    """t(F, W) as an explicit sum over all maps V(F) -> blocks.

    Each map phi contributes prod_v weight[phi(v)] * prod_{uv in E(F)} values[phi(u), phi(v)].
    """
    if f.n < 1:
        raise GraphonError("pattern graph needs at least one vertex")
    m = w.m
    if m**f.n > ENUMERATION_LIMIT:
        raise GuardExceeded(
            f"{m}^{f.n} block assignments exceed the enumeration bound {ENUMERATION_LIMIT}"
        )
    edges = f.sorted_edges()
    total = 0.0
    for phi in _mixed_radix_chunks(m, f.n):
        term = np.prod(w.weights[phi], axis=1)
        for a, b in edges:
            term = term * w.values[phi[:, a], phi[:, b]]
        total += float(np.sum(term))
    return total


def hom_count(f: SimpleGraph, g: SimpleGraph) -> int:
    """Number of maps V(F) -> V(G) sending edges to edges, by backtracking."""
    if g.n ** f.n > ENUMERATION_LIMIT:
        raise GuardExceeded(
            f"{g.n}^{f.n} vertex maps exceed the enumeration bound {ENUMERATION_LIMIT}"
        )
    if f.n == 0:
        return 1
    if g.n == 0:
        return 0
    fnb = f.neighbors()
    gnb = [set(x) for x in g.neighbors()]
    order = _search_order(f.n, fnb)
    position = {v: i for i, v in enumerate(order)}
    # for each vertex in order, its neighbours already placed
    back = [[u for u in fnb[v] if position[u] < i] for i, v in enumerate(order)]
    image = [0] * f.n
    everything = range(g.n)

    def extend(i: int) -> int:
        if i == f.n:
            return 1
        v = order[i]
        placed = back[i]
        if placed:
            cands = gnb[image[placed[0]]]
            for u in placed[1:]:
                cands = cands & gnb[image[u]]
        else:
            cands = everything
        count = 0
        for c in cands:
            image[v] = c
            count += extend(i + 1)
        return count

    return extend(0)


def _search_order(n: int, nb: list[list[int]]) -> list[int]:
    """BFS order per component so most vertices have a placed neighbour."""
    seen = [False] * n
    order = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in nb[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return order


def graph_density_consistency(f: SimpleGraph, g: SimpleGraph) -> float:
    """|t(F, W_G) - hom(F, G) / v(G)^v(F)|."""
    t = density_direct(f, graph_to_graphon(g))
    return abs(t - hom_count(f, g) / g.n**f.n)


def cycle_density_spectral(k: int, s: Spectrum) -> float:
    """t(C_k, W) as the k-th power sum of the nonzero eigenvalues."""
    if k < 3:
        raise Refusal("the cycle/eigenvalue identity holds only for k >= 3")
    return s.power_sum(k)


@dataclass(frozen=True)
class CycleProfile:
    values: tuple[float, ...]
    k_min: int = 3

    @property
    def k_max(self) -> int:
        return self.k_min + len(self.values) - 1

    def __getitem__(self, k: int) -> float:
        return self.values[k - self.k_min]

    def to_dict(self) -> dict:
        return {"k_min": self.k_min, "values": list(self.values)}

    @classmethod
    def from_dict(cls, d: dict) -> CycleProfile:
        try:
            return cls(tuple(float(x) for x in d["values"]), int(d["k_min"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphonError(f"bad cycle profile document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> CycleProfile:
        return cls.from_dict(json.loads(text))


def cycle_profile(w: StepGraphon, k_max: int = 16) -> CycleProfile:
    if k_max < 3:
        raise Refusal("k_max must be at least 3")
    s = decompose(w).spectrum
    # cycle densities of a [0,1]-valued graphon lie in [0,1]; clip round-off
    vals = tuple(min(1.0, max(0.0, cycle_density_spectral(k, s))) for k in range(3, k_max + 1))
    return CycleProfile(vals)
