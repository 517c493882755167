"""Step graphons, simple graphs, and the partition algebra between them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphonError

WEIGHT_SUM_TOL = 1e-12
VALUE_TOL = 1e-12
# Cumulative boundaries closer than this are treated as the same cut point.
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class Partition:
    """Consecutive intervals of [0,1], stored as cumulative boundaries."""

    boundaries: tuple[float, ...]

    def __post_init__(self):
        b = self.boundaries
        if len(b) < 2 or b[0] != 0.0 or b[-1] != 1.0:
            raise GraphonError("partition boundaries must start at 0 and end at 1")
        if any(b1 <= b0 for b0, b1 in zip(b, b[1:])):
            raise GraphonError("partition boundaries must be strictly increasing")

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> Partition:
        cum = np.concatenate([[0.0], np.cumsum(weights)])
        cum[-1] = 1.0
        return cls(tuple(float(c) for c in cum))

    @property
    def weights(self) -> np.ndarray:
        return np.diff(np.asarray(self.boundaries))

    def __len__(self):
        return len(self.boundaries) - 1

    def locate(self, x) -> np.ndarray:
        """Block index containing each point of ``x`` (points in [0,1])."""
        inner = np.asarray(self.boundaries[1:-1])
        return np.searchsorted(inner, np.asarray(x), side="right")


class StepGraphon:
    """A graphon constant on the rectangles of a finite interval partition.

    ``weights[i]`` is the length of the i-th interval and ``values[i, j]`` the
    value of W on the product of intervals i and j. Blocks are positional:
    block i is the i-th interval from the left.
    """

    __slots__ = ("weights", "values")

    def __init__(self, weights, values):
        w = np.array(weights, dtype=float).reshape(-1)
        v = np.array(values, dtype=float)
        m = w.size
        if m == 0:
            raise GraphonError("a step graphon needs at least one block")
        if v.shape != (m, m):
            raise GraphonError(f"values must be {m}x{m}, got shape {v.shape}")
        if not np.all(np.isfinite(w)) or not np.all(np.isfinite(v)):
            raise GraphonError("weights and values must be finite")
        if np.any(w <= 0):
            raise GraphonError("block weights must be strictly positive")
        total = w.sum()
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise GraphonError(f"block weights sum to {total!r}, expected 1")
        w = w / total
        if np.any(v < -VALUE_TOL) or np.any(v > 1.0 + VALUE_TOL):
            raise GraphonError("graphon values must lie in [0, 1]")
        if np.max(np.abs(v - v.T)) > VALUE_TOL:
            raise GraphonError("values matrix must be symmetric")
        v = np.clip(v, 0.0, 1.0)
        # mirror the upper triangle so symmetry is exact
        v = np.triu(v) + np.triu(v, 1).T
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "values", v)

    def __setattr__(self, name, value):
        raise AttributeError("StepGraphon is immutable")

    def __repr__(self):
        return f"StepGraphon(weights={self.weights.tolist()}, values={self.values.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, StepGraphon):
            return NotImplemented
        return np.array_equal(self.weights, other.weights) and np.array_equal(
            self.values, other.values
        )

    def __hash__(self):
        return hash((self.weights.tobytes(), self.values.tobytes()))

    @property
    def m(self) -> int:
        return self.weights.size

    @property
    def partition(self) -> Partition:
        return Partition.from_weights(self.weights)

    def is_zero_one(self) -> bool:
        return bool(np.all((self.values == 0.0) | (self.values == 1.0)))

    def operator_matrix(self) -> np.ndarray:
        """Matrix of T_W acting on block-constant functions: ``values @ diag(weights)``."""
        return self.values * self.weights[None, :]

    def permuted(self, perm: Sequence[int]) -> StepGraphon:
        """Relabel blocks so that new block i is old block ``perm[i]``."""
        p = np.asarray(perm)
        if sorted(p.tolist()) != list(range(self.m)):
            raise GraphonError("perm must be a permutation of the block indices")
        return StepGraphon(self.weights[p], self.values[np.ix_(p, p)])

    def refine(self, boundaries: Iterable[float]) -> StepGraphon:
        """Same function on a finer partition that also cuts at ``boundaries``."""
        extra = Partition(tuple(sorted({0.0, 1.0, *map(float, boundaries)})))
        return _restrict(self, _merge(self.partition, extra))

    def to_dict(self) -> dict:
        return {"weights": self.weights.tolist(), "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> StepGraphon:
        try:
            return cls(d["weights"], d["values"])
        except (KeyError, TypeError) as exc:
            raise GraphonError(f"bad step graphon document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> StepGraphon:
        return cls.from_dict(_loads(text))

    # convenience constructors

    @classmethod
    def constant(cls, p: float) -> StepGraphon:
        return cls([1.0], [[p]])

    @classmethod
    def indicator_square(cls, s: float, value: float = 1.0) -> StepGraphon:
        """``value`` on [0,s]^2, zero elsewhere."""
        if not 0.0 < s <= 1.0:
            raise GraphonError("side length must lie in (0, 1]")
        if s == 1.0:
            return cls.constant(value)
        return cls([s, 1.0 - s], [[value, 0.0], [0.0, 0.0]])


@dataclass(frozen=True)
class SimpleGraph:
    """Finite undirected simple graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        n = int(n)
        if n < 0:
            raise GraphonError("vertex count must be nonnegative")
        normalized = set()
        for e in edges:
            a, b = (int(x) for x in e)
            if a == b:
                raise GraphonError(f"loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise GraphonError(f"edge ({a}, {b}) out of range for n={n}")
            normalized.add((min(a, b), max(a, b)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1
        return a

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            nb[i].append(j)
            nb[j].append(i)
        return nb

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    # named families

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def cycle(cls, k: int) -> SimpleGraph:
        if k < 3:
            raise GraphonError("cycles need at least 3 vertices")
        return cls(k, [(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def path(cls, n: int) -> SimpleGraph:
        """Path on ``n`` vertices."""
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def from_adjacency(cls, a) -> SimpleGraph:
        a = np.asarray(a)
        n = a.shape[0]
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n) if a[i, j]])

    # serialization

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_dict(cls, d: dict) -> SimpleGraph:
        try:
            return cls(d["n"], d.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise GraphonError(f"bad graph document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> SimpleGraph:
        return cls.from_dict(_loads(text))

    def to_edgelist(self) -> str:
        lines = [f"n {self.n}"] + [f"{a} {b}" for a, b in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> SimpleGraph:
        n = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "n":
                if n is not None or len(parts) != 2:
                    raise GraphonError(f"line {lineno}: malformed header")
                n = _parse_int(parts[1], lineno)
                continue
            if len(parts) != 2:
                raise GraphonError(f"line {lineno}: expected 'a b'")
            edges.append((_parse_int(parts[0], lineno), _parse_int(parts[1], lineno)))
        if n is None:
            raise GraphonError("edge list lacks the 'n <k>' header")
        return cls(n, edges)

    @classmethod
    def parse(cls, text: str) -> SimpleGraph:
        """Accept either the JSON form or the edge-list text form."""
        if text.lstrip().startswith("{"):
            return cls.from_json(text)
        return cls.from_edgelist(text)


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphonError(f"line {lineno}: {tok!r} is not an integer") from None


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphonError(f"invalid JSON: {exc}") from exc


def graph_to_graphon(g: SimpleGraph) -> StepGraphon:
    """The graphon W_G: n equal blocks, value 1 on blocks of adjacent vertices."""
    if g.n == 0:
        raise GraphonError("cannot embed the empty graph")
    return StepGraphon(np.full(g.n, 1.0 / g.n), g.adjacency().astype(float))


def _merge(p: Partition, q: Partition) -> Partition:
    pts = sorted(set(p.boundaries) | set(q.boundaries))
    merged = [0.0]
    for x in pts[1:]:
        if x - merged[-1] > BOUNDARY_TOL:
            merged.append(x)
    merged[-1] = 1.0
    return Partition(tuple(merged))


def _restrict(w: StepGraphon, fine: Partition) -> StepGraphon:
    b = np.asarray(fine.boundaries)
    mids = (b[:-1] + b[1:]) / 2
    idx = w.partition.locate(mids)
    return StepGraphon(fine.weights, w.values[np.ix_(idx, idx)])


def common_refinement(u: StepGraphon, w: StepGraphon) -> tuple[StepGraphon, StepGraphon]:
    """Re-express ``u`` and ``w`` on the overlay of their partitions.

    An input whose partition already equals the overlay is returned as is.
    """
    pu, pw = u.partition, w.partition
    fine = _merge(pu, pw)
    out = []
    for g, p in ((u, pu), (w, pw)):
        if len(p) == len(fine):
            out.append(g)
        else:
            out.append(_restrict(g, fine))
    u2, w2 = out
    if u2.m == w2.m and not np.array_equal(u2.weights, w2.weights):
        # partitions agree up to BOUNDARY_TOL; share one weight vector exactly
        w2 = StepGraphon(u2.weights, w2.values)
    return u2, w2


def _weighted_sum(w: np.ndarray, x: np.ndarray) -> float:
    # fixed summation order, so l2_norm_sq == l1_norm bitwise on 0/1 data
    return float(w @ x @ w)


def l1_norm(w: StepGraphon) -> float:
    """Integral of W over the unit square (W is nonnegative)."""
    return _weighted_sum(w.weights, w.values)


def l2_norm_sq(w: StepGraphon) -> float:
    return _weighted_sum(w.weights, w.values * w.values)
