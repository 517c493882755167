"""Cut norm of step-graphon differences and brackets on the cut distance.

On a common partition with block weights ``w``, the integral of U - W over
S x T is ``s^T M t`` where ``M[i, j] = w_i w_j (U - W)[i, j]`` and ``s, t`` are
the fractions of each block covered by S and T. That form is bilinear on
[0,1]^m x [0,1]^m, so its extreme values sit at 0/1 vertices and the
supremum over measurable sets is a finite maximum.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import GraphonError, GuardExceeded
from .graphon import StepGraphon, common_refinement, l1_norm

CUT_NORM_MAX_BLOCKS = 24
EXHAUSTIVE_MAX_BLOCKS = 9
EQUAL_REFINEMENT_LIMIT = 64
_CHUNK_BITS = 14


@dataclass(frozen=True)
class CutNormCertificate:
    """Cut norm value and a block subset pair (on the common refinement) attaining it."""

    value: float
    s_mask: tuple[int, ...]
    t_mask: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"value": self.value, "s_mask": list(self.s_mask), "t_mask": list(self.t_mask)}

    @classmethod
    def from_dict(cls, d: dict) -> CutNormCertificate:
        try:
            return cls(float(d["value"]), tuple(map(int, d["s_mask"])), tuple(map(int, d["t_mask"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphonError(f"bad certificate document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> CutNormCertificate:
        return cls.from_dict(json.loads(text))


def difference_form(u: StepGraphon, w: StepGraphon) -> np.ndarray:
    """The matrix M of the bilinear form on the common refinement."""
    u2, w2 = common_refinement(u, w)
    wt = u2.weights
    return wt[:, None] * wt[None, :] * (u2.values - w2.values)


def evaluate_cut(u: StepGraphon, w: StepGraphon, s, t) -> float:
    """|integral of (U - W) over S x T| for block-fraction vectors s, t."""
    m = difference_form(u, w)
    return abs(float(np.asarray(s, dtype=float) @ m @ np.asarray(t, dtype=float)))


def _vertex_rows(m: int, start: int, stop: int) -> np.ndarray:
    """Rows s in {0,1}^m for codes start..stop-1, s[0] the most significant bit."""
    codes = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(float)


def cut_norm_exact(u: StepGraphon, w: StepGraphon) -> CutNormCertificate:
    """Exact d_box(U, W) by enumerating S over block subsets.

    For fixed s the best T takes every block where ``(s^T M)_j`` has the
    favourable sign. Among equal maxima the lexicographically smallest
    s_mask wins (positive sign before negative).
    """
    mat = difference_form(u, w)
    m = mat.shape[0]
    if m > CUT_NORM_MAX_BLOCKS:
        raise GuardExceeded(
            f"common refinement has {m} blocks, above the exact limit {CUT_NORM_MAX_BLOCKS}; "
            "use mean_gap_lower_bound or cut_distance_upper for bounds"
        )
    best = (-1.0, 0, 0)  # value, code, sign (0 positive, 1 negative)
    chunk = 1 << _CHUNK_BITS
    for start in range(0, 1 << m, chunk):
        rows = _vertex_rows(m, start, min(start + chunk, 1 << m))
        r = rows @ mat
        pos = np.sum(np.maximum(r, 0.0), axis=1)
        neg = np.sum(np.maximum(-r, 0.0), axis=1)
        for sign, vals in ((0, pos), (1, neg)):
            i = int(np.argmax(vals))
            cand = (float(vals[i]), start + i, sign)
            if cand[0] > best[0] or (cand[0] == best[0] and (cand[1], cand[2]) < (best[1], best[2])):
                best = cand
    value, code, sign = best
    s = _vertex_rows(m, code, code + 1)[0]
    r = s @ mat
    t = (r > 0) if sign == 0 else (r < 0)
    return CutNormCertificate(value, tuple(int(x) for x in s), tuple(int(x) for x in t))


def mean_gap_lower_bound(u: StepGraphon, w: StepGraphon) -> float:
    """|∫U - ∫W|: the cut of S = T = [0,1], a lower bound on the cut distance."""
    return abs(l1_norm(u) - l1_norm(w))


def equal_weight_blocks(*graphons: StepGraphon, limit: int = EQUAL_REFINEMENT_LIMIT, tol: float = 1e-9) -> int:
    """Smallest N < limit such that every block boundary is a multiple of 1/N."""
    cuts = [b for g in graphons for b in g.partition.boundaries[1:-1]]
    for n in range(1, limit):
        if all(abs(b * n - round(b * n)) <= tol for b in cuts):
            return n
    raise GuardExceeded(f"no equal-weight refinement with fewer than {limit} blocks")


def to_equal_blocks(g: StepGraphon, n: int) -> StepGraphon:
    """Re-express ``g`` on n equal blocks (its boundaries must be multiples of 1/n)."""
    mids = (np.arange(n) + 0.5) / n
    idx = g.partition.locate(mids)
    for b in g.partition.boundaries[1:-1]:
        if abs(b * n - round(b * n)) > 1e-9:
            raise GraphonError(f"boundary {b!r} is not a multiple of 1/{n}")
    return StepGraphon(np.full(n, 1.0 / n), g.values[np.ix_(idx, idx)])


def _cut_sup(mat: np.ndarray, rows: np.ndarray | None = None) -> float:
    """max over 0/1 vectors s, t of |s^T mat t|; ``rows`` may hold all s precomputed."""
    m = mat.shape[0]
    chunks = [rows] if rows is not None else (
        _vertex_rows(m, a, min(a + (1 << _CHUNK_BITS), 1 << m))
        for a in range(0, 1 << m, 1 << _CHUNK_BITS)
    )
    best = 0.0
    for block in chunks:
        r = block @ mat
        best = max(
            best,
            float(np.max(np.sum(np.maximum(r, 0.0), axis=1))),
            float(np.max(np.sum(np.maximum(-r, 0.0), axis=1))),
        )
    return best


def cut_distance_upper(
    u: StepGraphon,
    w: StepGraphon,
    strategy: str = "exhaustive",
    blocks: int | None = None,
) -> float:
    """Upper bound on the cut distance: min cut norm over block relabelings of ``u``.

    Both graphons are first placed on N equal blocks (N the smallest common
    equal-weight refinement, or ``blocks`` if given, which must be a multiple
    of it). ``exhaustive`` tries all N! relabelings (N <= 9); ``greedy``
    descends by transpositions from the identity.
    """
    base = equal_weight_blocks(u, w)
    n = base if blocks is None else blocks
    if n % base:
        raise GraphonError(f"blocks={n} is not a multiple of the minimal refinement {base}")
    if n > CUT_NORM_MAX_BLOCKS:
        raise GuardExceeded(f"{n} equal blocks exceed the exact cut norm limit {CUT_NORM_MAX_BLOCKS}")
    ue, we = to_equal_blocks(u, n), to_equal_blocks(w, n)
    rows = _vertex_rows(n, 0, 1 << n) if n <= _CHUNK_BITS else None
    uv, wv = ue.values, we.values

    def cost(perm) -> float:
        p = np.asarray(perm)
        return _cut_sup(uv[np.ix_(p, p)] - wv, rows) / (n * n)

    if strategy == "exhaustive":
        if n > EXHAUSTIVE_MAX_BLOCKS:
            raise GuardExceeded(f"exhaustive search needs N <= {EXHAUSTIVE_MAX_BLOCKS}, got {n}")
        return min(cost(p) for p in itertools.permutations(range(n)))
    if strategy == "greedy":
        perm = list(range(n))
        current = cost(perm)
        improved = True
        while improved and current > 0:
            improved = False
            for i, j in itertools.combinations(range(n), 2):
                perm[i], perm[j] = perm[j], perm[i]
                c = cost(perm)
                if c < current:
                    current, improved = c, True
                else:
                    perm[i], perm[j] = perm[j], perm[i]
        return current
    raise GraphonError(f"unknown strategy {strategy!r}")

