"""Spectra of step-graphon kernel operators and unitary intertwiners.

For a step graphon with block weights ``w`` and values ``B`` the operator T_W
maps block-constant functions to block-constant functions via ``B @ diag(w)``.
That matrix is similar to the symmetric ``S = diag(sqrt w) B diag(sqrt w)``;
eigenvectors of S divided by ``sqrt w`` are eigenfunctions of T_W that are
orthonormal under ``<f, g> = sum_i w_i f_i g_i``. Functions orthogonal to all
block indicators are annihilated, so the nonzero spectrum is exactly that of S.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import EigensolverError, GraphonError, SpectraMismatch
from .graphon import StepGraphon, common_refinement, l2_norm_sq

ZERO_TOL = 1e-12
GROUP_TOL = 1e-8
MATCH_TOL = 1e-8


def symmetric_eigh(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of a real symmetric matrix, ascending order."""
    try:
        return np.linalg.eigh(s)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"symmetric eigensolver did not converge: {exc}") from exc


def _group(eigenvalues: np.ndarray, tol: float) -> list[tuple[float, int]]:
    """Chain descending eigenvalues whose consecutive gaps are <= tol."""
    groups: list[list[float]] = []
    for lam in eigenvalues:
        if groups and groups[-1][-1] - lam <= tol:
            groups[-1].append(float(lam))
        else:
            groups.append([float(lam)])
    for g in groups:
        if g[0] - g[-1] > tol:
            raise EigensolverError(
                f"eigenvalue cluster [{g[-1]!r}, {g[0]!r}] is wider than group_tol={tol!r}; "
                "multiplicities are ambiguous at this tolerance"
            )
    return [(float(np.mean(g)), len(g)) for g in groups]


@dataclass(frozen=True)
class Spectrum:
    """Nonzero eigenvalues (descending) with tolerance-clustered multiplicities."""

    eigenvalues: tuple[float, ...]
    groups: tuple[tuple[float, int], ...]
    zero_tol: float = ZERO_TOL
    group_tol: float = GROUP_TOL

    @classmethod
    def from_eigenvalues(cls, eigenvalues, zero_tol=ZERO_TOL, group_tol=GROUP_TOL) -> Spectrum:
        lam = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
        lam = lam[np.abs(lam) > zero_tol]
        return cls(
            tuple(float(x) for x in lam),
            tuple(_group(lam, group_tol)),
            zero_tol,
            group_tol,
        )

    def __len__(self):
        return len(self.eigenvalues)

    def power_sum(self, k: int) -> float:
        return float(sum(lam**k for lam in self.eigenvalues))

    def to_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "groups": [[v, m] for v, m in self.groups],
            "zero_tol": self.zero_tol,
            "group_tol": self.group_tol,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Spectrum:
        try:
            return cls(
                tuple(float(x) for x in d["eigenvalues"]),
                tuple((float(v), int(m)) for v, m in d["groups"]),
                float(d["zero_tol"]),
                float(d["group_tol"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphonError(f"bad spectrum document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Spectrum:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenpairs of T_W restricted to block-constant functions.

    ``eigenvectors[a]`` is the block-constant eigenfunction for
    ``spectrum.eigenvalues[a]``; ``kernel`` holds an orthonormal basis of the
    block-constant null space (eigenvalues with modulus <= zero_tol), and
    ``all_eigenvalues`` the full ascending output of the eigensolver.
    """

    spectrum: Spectrum
    eigenvectors: np.ndarray
    kernel: np.ndarray
    weights: np.ndarray
    all_eigenvalues: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Values matrix rebuilt as sum of lambda f f^T."""
        lam = np.asarray(self.spectrum.eigenvalues)
        f = self.eigenvectors
        return (f.T * lam) @ f

    def apply(self, g: np.ndarray) -> np.ndarray:
        """T_W g via the eigen-expansion sum of lambda <f, g> f."""
        lam = np.asarray(self.spectrum.eigenvalues)
        coeff = self.eigenvectors @ (self.weights * g)
        return (lam * coeff) @ self.eigenvectors


def decompose(w: StepGraphon, zero_tol: float = ZERO_TOL, group_tol: float = GROUP_TOL) -> SpectralDecomposition:
    if not 0 < zero_tol < group_tol:
        raise GraphonError("tolerances must satisfy 0 < zero_tol < group_tol")
    root = np.sqrt(w.weights)
    s = root[:, None] * w.values * root[None, :]
    lam, vec = symmetric_eigh(s)
    funcs = (vec / root[:, None]).T  # rows are eigenfunctions
    order = np.argsort(-lam, kind="stable")
    lam, funcs = lam[order], funcs[order]
    keep = np.abs(lam) > zero_tol
    spectrum = Spectrum(
        tuple(float(x) for x in lam[keep]),
        tuple(_group(lam[keep], group_tol)),
        zero_tol,
        group_tol,
    )
    return SpectralDecomposition(
        spectrum=spectrum,
        eigenvectors=funcs[keep],
        kernel=funcs[~keep],
        weights=w.weights.copy(),
        all_eigenvalues=np.sort(lam),
    )


def parseval_residual(w: StepGraphon, d: SpectralDecomposition) -> float:
    return abs(l2_norm_sq(w) - float(np.sum(np.square(d.spectrum.eigenvalues))))


def spectra_equal(a: Spectrum, b: Spectrum, match_tol: float = MATCH_TOL) -> bool:
    """Multiset equality up to ``match_tol``.

    Pairing the two descending lists position by position is the optimal
    one-to-one matching on the real line, so it fails only if no matching works.
    """
    if a.zero_tol != b.zero_tol:
        raise GraphonError("spectra built with different zero_tol are not comparable")
    if len(a) != len(b):
        return False
    return all(abs(x - y) <= match_tol for x, y in zip(a.eigenvalues, b.eigenvalues))


@dataclass(frozen=True, eq=False)
class Intertwiner:
    """Matrix acting on block-constant functions over a shared partition.

    Unitary for the inner product weighted by ``weights``; maps eigenfunctions
    of the second graphon's operator onto those of the first.
    """

    matrix: np.ndarray
    weights: np.ndarray

    def unitarity_residual(self) -> float:
        d = np.diag(self.weights)
        return float(np.max(np.abs(self.matrix.T @ d @ self.matrix - d)))

    def intertwining_residual(self, u: StepGraphon, w: StepGraphon) -> float:
        """max |T S_W - S_U T|, S being the operator matrices on the common refinement."""
        u2, w2 = common_refinement(u, w)
        if u2.m != self.matrix.shape[0] or np.max(np.abs(u2.weights - self.weights)) > 1e-12:
            raise GraphonError("graphons do not refine to the intertwiner's partition")
        t = self.matrix
        return float(np.max(np.abs(t @ w2.operator_matrix() - u2.operator_matrix() @ t)))

    def to_dict(self) -> dict:
        return {"weights": self.weights.tolist(), "matrix": self.matrix.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> Intertwiner:
        try:
            return cls(np.array(d["matrix"], dtype=float), np.array(d["weights"], dtype=float))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphonError(f"bad intertwiner document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Intertwiner:
        return cls.from_dict(json.loads(text))


def _kernel_basis(eigvecs: np.ndarray, weights: np.ndarray, dim: int) -> np.ndarray:
    """Weighted Gram-Schmidt of the coordinate basis projected off ``eigvecs``.

    Deterministic given block order; returns ``dim`` rows orthonormal under
    the weighted inner product.
    """
    m = weights.size
    basis: list[np.ndarray] = []
    for i in range(m):
        if len(basis) == dim:
            break
        v = np.zeros(m)
        v[i] = 1.0 / np.sqrt(weights[i])
        # project twice for numerical orthogonality
        for _ in range(2):
            for f in list(eigvecs) + basis:
                v = v - np.dot(weights * f, v) * f
        norm = np.sqrt(np.dot(weights * v, v))
        if norm > 1e-8:
            basis.append(v / norm)
    if len(basis) != dim:
        raise EigensolverError("could not complete an orthonormal kernel basis")
    return np.array(basis).reshape(dim, m)


def build_intertwiner(u: StepGraphon, w: StepGraphon, match_tol: float = MATCH_TOL) -> Intertwiner:
    """Unitary T on the common refinement with ``T o T_W = T_U o T``.

    Each eigenspace of W is mapped isometrically onto the eigenspace of U with
    the matching eigenvalue, and W's null space onto U's. The partition is the
    one ``common_refinement(u, w)`` produces.
    """
    u2, w2 = common_refinement(u, w)
    du, dw = decompose(u2), decompose(w2)
    if not spectra_equal(du.spectrum, dw.spectrum, match_tol):
        from .cospectral import discriminate_spectra

        report = discriminate_spectra(du.spectrum, dw.spectrum, match_tol)
        raise SpectraMismatch(
            f"spectra differ: eigenvalue modulus {report.nu!r} has multiplicities "
            f"(+{report.m_plus_u}, -{report.m_minus_u}) vs (+{report.m_plus_w}, -{report.m_minus_w})",
            report,
        )
    gu, gw = du.spectrum.groups, dw.spectrum.groups
    if len(gu) != len(gw) or any(
        mu != mw or abs(vu - vw) > match_tol for (vu, mu), (vw, mw) in zip(gu, gw)
    ):
        raise SpectraMismatch(
            "eigenvalue groups pair up with unequal multiplicities; "
            "loosen match_tol or tighten group_tol"
        )
    weights = u2.weights
    kdim = weights.size - len(du.spectrum)
    src = np.vstack([dw.eigenvectors, _kernel_basis(dw.eigenvectors, weights, kdim)])
    dst = np.vstack([du.eigenvectors, _kernel_basis(du.eigenvectors, weights, kdim)])
    # T = sum_a g_a <f_a, .>  with <f, h> = f^T D h
    matrix = dst.T @ (src * weights[None, :])
    return Intertwiner(matrix, weights.copy())
