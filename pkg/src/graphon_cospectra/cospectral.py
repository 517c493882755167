"""Cospectrality tests, discrimination of non-cospectral pairs, and the
inapproximability certificate for graphons with different edge densities.

Two graphons are cospectral when all cycle densities t(C_k, .) with k >= 3
agree; equivalently their nonzero spectra agree, equivalently a unitary
operator intertwines their kernel operators. For step graphons the spectral
form is finitely decidable and is the primary route here; cycle profiles and
intertwiners cross-check it.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .cutnorm import mean_gap_lower_bound
from .densities import cycle_profile
from .errors import GraphonError, Refusal
from .graphon import StepGraphon, l1_norm, l2_norm_sq
from .sampling import SampleSpec, graph_eigenvalues, sample_adjacency
from .spectral import MATCH_TOL, Spectrum, decompose, spectra_equal


def is_cospectral(u: StepGraphon, w: StepGraphon, tol: float = MATCH_TOL) -> bool:
    return spectra_equal(decompose(u).spectrum, decompose(w).spectrum, tol)


def profiles_match(u: StepGraphon, w: StepGraphon, k_max: int = 16, tol: float = 1e-8) -> bool:
    """Whether t(C_k, u) and t(C_k, w) agree within ``tol`` for every 3 <= k <= k_max."""
    if k_max < 4:
        raise Refusal("k_max must be at least 4")
    pu, pw = cycle_profile(u, k_max), cycle_profile(w, k_max)
    return max(abs(a - b) for a, b in zip(pu.values, pw.values)) < tol


@dataclass(frozen=True)
class DiscriminationReport:
    """Where two spectra first differ, and which cycle lengths expose it.

    ``nu`` is the largest eigenvalue modulus whose (+nu, -nu) multiplicities
    differ; ``alpha`` the next smaller modulus present in either spectrum;
    ``h`` the number of eigenvalues (both spectra) with modulus in (beta, nu).
    For every k of parity ``parity`` the cycle-density gap is at least
    ``|coefficient(k)| nu^k - (h + 2) alpha^k``, positive from ``witness_k`` on.
    """

    nu: float
    alpha: float
    beta: float
    h: int
    m_plus_u: int
    m_minus_u: int
    m_plus_w: int
    m_minus_w: int
    parity: int
    witness_k: int

    def coefficient(self, k: int) -> int:
        sign = -1 if k % 2 else 1
        return self.m_plus_u - self.m_plus_w + sign * (self.m_minus_u - self.m_minus_w)

    def main_term(self, k: int) -> float:
        return self.coefficient(k) * self.nu**k

    def envelope(self, k: int) -> float:
        return (self.h + 2) * self.alpha**k

    def gap_lower_bound(self, k: int) -> float:
        return abs(self.coefficient(k)) * self.nu**k - self.envelope(k)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> DiscriminationReport:
        try:
            return cls(
                nu=float(d["nu"]),
                alpha=float(d["alpha"]),
                beta=float(d["beta"]),
                h=int(d["h"]),
                m_plus_u=int(d["m_plus_u"]),
                m_minus_u=int(d["m_minus_u"]),
                m_plus_w=int(d["m_plus_w"]),
                m_minus_w=int(d["m_minus_w"]),
                parity=int(d["parity"]),
                witness_k=int(d["witness_k"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphonError(f"bad discrimination report: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> DiscriminationReport:
        return cls.from_dict(json.loads(text))


def _witness(parity: int, nu: float, alpha: float, h: int) -> int:
    k = 3 if parity == 1 else 4
    if alpha == 0.0:
        return k
    # |coefficient| >= 1, so nu^k > (h+2) alpha^k suffices
    threshold = math.log(h + 2) / math.log(nu / alpha)
    while k <= threshold:
        k += 2
    return k


def discriminate_spectra(a: Spectrum, b: Spectrum, tol: float = MATCH_TOL) -> DiscriminationReport:
    """Discrimination bookkeeping for spectra ``a`` (of U) and ``b`` (of W).

    Moduli within ``tol`` of each other (by chaining) count as one modulus.
    """
    entries = [(abs(x), x > 0, 0) for x in a.eigenvalues] + [(abs(x), x > 0, 1) for x in b.eigenvalues]
    entries.sort(key=lambda e: -e[0])
    clusters: list[list[tuple[float, bool, int]]] = []
    for e in entries:
        if clusters and clusters[-1][-1][0] - e[0] <= tol:
            clusters[-1].append(e)
        else:
            clusters.append([e])

    def counts(cluster):
        c = [0, 0, 0, 0]  # +u, -u, +w, -w
        for _, positive, side in cluster:
            c[2 * side + (0 if positive else 1)] += 1
        return c

    for idx, cluster in enumerate(clusters):
        mpu, mmu, mpw, mmw = counts(cluster)
        if (mpu, mmu) == (mpw, mmw):
            continue
        nu = float(np.mean([e[0] for e in cluster]))
        rest = clusters[idx + 1:]
        alpha = max(e[0] for e in rest[0]) if rest else 0.0
        # finite spectra: cut below the smallest modulus so the tails are empty
        beta = entries[-1][0] / 2
        h = sum(len(c) for c in rest)
        parity = 0 if mpu + mmu != mpw + mmw else 1
        return DiscriminationReport(
            nu=nu,
            alpha=alpha,
            beta=beta,
            h=h,
            m_plus_u=mpu,
            m_minus_u=mmu,
            m_plus_w=mpw,
            m_minus_w=mmw,
            parity=parity,
            witness_k=_witness(parity, nu, alpha, h),
        )
    raise Refusal("spectra agree at this tolerance; nothing to discriminate")


def discriminate(u: StepGraphon, w: StepGraphon, tol: float = MATCH_TOL) -> DiscriminationReport:
    su, sw = decompose(u).spectrum, decompose(w).spectrum
    if spectra_equal(su, sw, tol):
        raise Refusal("graphons are cospectral; nothing to discriminate")
    return discriminate_spectra(su, sw, tol)


def verify_gap_formula(u: StepGraphon, w: StepGraphon, r: DiscriminationReport, k: int) -> float:
    """How far t(C_k,u) - t(C_k,w) falls outside main_term(k) +- envelope(k); 0 if inside.

    The cycle densities are evaluated as eigenvalue power sums.
    """
    if k < 3:
        raise Refusal("cycle length must be at least 3")
    actual = decompose(u).spectrum.power_sum(k) - decompose(w).spectrum.power_sum(k)
    return max(0.0, abs(actual - r.main_term(k)) - r.envelope(k))


@dataclass(frozen=True)
class InapproxCertificate:
    """Outcome of checking the density-gap argument on one pair of 0/1 graphons.

    ``proximity_u`` and ``proximity_w`` are the distances fed into the chain
    ``|U'|_2^2 = |U'|_1 >= |U|_1 - proximity_u`` and
    ``|W'|_2^2 = |W'|_1 <= |W|_1 + proximity_w``.
    """

    l1_u: float
    l1_w: float
    threshold: float
    l2sq_u_prime: float
    l2sq_w_prime: float
    proximity_u: float
    proximity_w: float
    within_threshold: bool
    chain_holds: bool
    not_cospectral: bool

    @property
    def l2sq_gap(self) -> float:
        return self.l2sq_u_prime - self.l2sq_w_prime

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> InapproxCertificate:
        return cls(**d)


def inapprox_check(
    u: StepGraphon,
    w: StepGraphon,
    u_prime: StepGraphon,
    w_prime: StepGraphon,
    d_u: float | None = None,
    d_w: float | None = None,
) -> InapproxCertificate:
    """Check whether 0/1-valued ``u_prime`` and ``w_prime`` are certifiably not cospectral.

    ``d_u``/``d_w`` are caller-known upper bounds on the cut distances to the
    targets; by default the mean gaps |∫U - ∫U'| are used, which already
    suffice for the chain of inequalities. The verdict is positive when both
    proximities are below (|U|_1 - |W|_1)/2, the chain holds, and the squared
    L2 norms (sums of squared eigenvalues) differ.
    """
    for name, g in (("u_prime", u_prime), ("w_prime", w_prime)):
        if not g.is_zero_one():
            raise Refusal(f"{name} must be 0/1-valued")
    l1u, l1w = l1_norm(u), l1_norm(w)
    if l1u <= l1w:
        raise Refusal("need l1_norm(u) > l1_norm(w)")
    threshold = (l1u - l1w) / 2
    gu, gw = mean_gap_lower_bound(u, u_prime), mean_gap_lower_bound(w, w_prime)
    if d_u is not None and d_u < gu:
        raise Refusal(f"d_u={d_u!r} is below the provable lower bound {gu!r}")
    if d_w is not None and d_w < gw:
        raise Refusal(f"d_w={d_w!r} is below the provable lower bound {gw!r}")
    pu = gu if d_u is None else d_u
    pw = gw if d_w is None else d_w
    l2u, l2w = l2_norm_sq(u_prime), l2_norm_sq(w_prime)
    within = pu < threshold and pw < threshold
    chain = l2u == l1_norm(u_prime) and l2w == l1_norm(w_prime) and l2u >= l1u - pu and l2w <= l1w + pw
    return InapproxCertificate(
        l1_u=l1u,
        l1_w=l1w,
        threshold=threshold,
        l2sq_u_prime=l2u,
        l2sq_w_prime=l2w,
        proximity_u=pu,
        proximity_w=pw,
        within_threshold=within,
        chain_holds=chain,
        not_cospectral=within and chain and l2u != l2w,
    )


def _sign_fixed(f: np.ndarray) -> list[float]:
    nz = np.flatnonzero(np.abs(f) > 1e-12)
    if nz.size and f[nz[0]] < 0:
        f = -f
    return [float(x) for x in f]


def theorem42_demo(ns=(50, 100, 200), seeds=range(20)) -> dict:
    """Constant 1/2 versus the indicator of [0,1/2]^2: cospectral, yet samples are not.

    Both graphons have spectrum {1/2}. Their edge densities differ by 1/4, so
    any 0/1 approximations within 1/8 have sums of squared eigenvalues more
    than 1/8 apart. Each trial samples G_n from U and H_n from W with the same
    seed and records that gap; failures are listed rather than raised.
    """
    u = StepGraphon.constant(0.5)
    w = StepGraphon.indicator_square(0.5)
    du, dw = decompose(u), decompose(w)
    spectra = {
        "u": list(du.spectrum.eigenvalues),
        "w": list(dw.spectrum.eigenvalues),
        "equal": spectra_equal(du.spectrum, dw.spectrum),
    }
    eigenfunctions = {
        "u": {"weights": u.weights.tolist(), "values": _sign_fixed(du.eigenvectors[0])},
        "w": {"weights": w.weights.tolist(), "values": _sign_fixed(dw.eigenvectors[0])},
    }
    threshold = (l1_norm(u) - l1_norm(w)) / 2
    trials = []
    failures = []
    for n in ns:
        for seed in seeds:
            ag = sample_adjacency(SampleSpec(int(n), int(seed), u))
            ah = sample_adjacency(SampleSpec(int(n), int(seed), w))
            sg = float(np.sum(np.square(graph_eigenvalues(ag))))
            sh = float(np.sum(np.square(graph_eigenvalues(ah))))
            ok = sg - sh > threshold
            trials.append({"n": int(n), "seed": int(seed), "l2sq_g": sg, "l2sq_h": sh, "gap": sg - sh, "passed": ok})
            if not ok:
                failures.append({"n": int(n), "seed": int(seed), "gap": sg - sh})
    return {
        "spectra": spectra,
        "eigenfunctions": eigenfunctions,
        "l1_u": l1_norm(u),
        "l1_w": l1_norm(w),
        "threshold": threshold,
        "trials": trials,
        "failures": failures,
        "all_passed": spectra["equal"] and not failures,
    }
