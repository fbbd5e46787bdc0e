"""Truncated Toeplitz matrices, numerical kernels and subspace comparison."""

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import _accel
from .circle_fft import AnalyticFunction, BoundaryFunction, project_plus
from .errors import DimMismatch, NoSpectralGap, OrderTooLarge

__all__ = [
    "ToeplitzMatrix",
    "Subspace",
    "toeplitz_matrix",
    "numerical_kernel",
    "principal_angles",
    "write_spectrum_csv",
]


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Finite section ``T[j, k] = phi_hat(j - k)``, ``0 <= j, k < m``."""

    symbol: BoundaryFunction
    m: int
    matrix: np.ndarray = field(repr=False)

    def apply(self, h):
        """Dense application to the first `m` coefficients of `h`."""
        if isinstance(h, AnalyticFunction):
            h = h.padded(self.m)[: self.m]
        return AnalyticFunction(self.matrix @ np.asarray(h, dtype=np.complex128)[: self.m])

    def apply_fast(self, h, m=None):
        """P+(phi * h) on the symbol grid, truncated to order `m` - 1."""
        m = self.m if m is None else m
        if not isinstance(h, BoundaryFunction):
            if not isinstance(h, AnalyticFunction):
                h = AnalyticFunction(h)
            h = h.on(self.symbol.grid)
        return project_plus(self.symbol * h, m - 1)

    def svd(self):
        return np.linalg.svd(self.matrix)


def toeplitz_matrix(phi, m):
    """Order-`m` finite section of the Toeplitz operator with symbol `phi`.

    Raises
    ------
    OrderTooLarge
        If ``m > n/4`` for the symbol grid of size n.
    """
    n = phi.grid.n
    if m > n // 4:
        raise OrderTooLarge(f"order {m} exceeds n/4 = {n // 4}")
    k = np.arange(m)
    col = phi.coeff(k)
    row = phi.coeff(-k)
    return ToeplitzMatrix(phi, m, _accel.toeplitz(col, row))


@dataclass
class Subspace:
    """Column-orthonormal basis in coefficient space.

    Attributes
    ----------
    basis : ndarray, shape (m, dim)
    tol : float
        Relative tolerance (or gap threshold) that produced the subspace.
    singular_values : ndarray or None
        Full spectrum, descending, when the subspace came from an SVD.
    gap_ratio : float or None
        Ratio of the smallest retained singular value to the largest
        discarded one, or to ``rel_tol * s_max`` when nothing is discarded.
    """

    basis: np.ndarray
    tol: float = 0.0
    singular_values: np.ndarray = None
    gap_ratio: float = None

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def order(self):
        return self.basis.shape[0]

    @classmethod
    def from_vectors(cls, vectors, tol=1e-12):
        """Orthonormalize the columns of `vectors` (rank-revealing)."""
        vectors = np.asarray(vectors, dtype=np.complex128)
        if vectors.ndim == 1:
            vectors = vectors[:, None]
        if vectors.shape[1] == 0:
            return cls(vectors, tol)
        u, s, _ = np.linalg.svd(vectors, full_matrices=False)
        rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
        return cls(u[:, :rank], tol)

    def projection_residual(self, v):
        """Norm of the component of `v` orthogonal to the subspace, relative to ``|v|``."""
        v = np.asarray(v, dtype=np.complex128)
        r = v - self.basis @ (self.basis.conj().T @ v)
        nv = np.linalg.norm(v)
        return float(np.linalg.norm(r) / nv) if nv else 0.0

    def orthonormality_error(self):
        g = self.basis.conj().T @ self.basis
        return float(np.max(np.abs(g - np.eye(self.dim)))) if self.dim else 0.0


def _gap_cut(s, gap_min, ceiling):
    """Number of trailing singular values split off by the first large gap.

    Scans from the top for the first consecutive ratio ``s[i]/s[i+1] >=
    gap_min`` whose lower value lies below ``ceiling * s[0]``.
    """
    with np.errstate(divide="ignore"):
        ratios = s[:-1] / s[1:]
    for i, r in enumerate(ratios):
        if r >= gap_min and s[i + 1] < ceiling * s[0]:
            return s.size - (i + 1)
    return 0


def numerical_kernel(T, rel_tol=1e-6, mode="threshold", gap_min=10.0, ceiling=0.1):
    """Right singular vectors of `T` spanning its numerical kernel.

    Parameters
    ----------
    T : ToeplitzMatrix or ndarray
    rel_tol : float
        In ``"threshold"`` mode, singular values below ``rel_tol * s_max``
        form the kernel.
    mode : {"threshold", "gap"}
        ``"gap"`` cuts at the first singular value gap of ratio at least
        `gap_min` whose lower side lies below ``ceiling * s_max``.  This
        resolves kernels whose finite-section singular values decay only
        algebraically with the order.

    Warns
    -----
    NoSpectralGap
        When the separation at the cut is below `gap_min`.
    """
    if not 1e-12 <= rel_tol <= 1e-2:
        raise ValueError(f"rel_tol must lie in [1e-12, 1e-2], got {rel_tol}")
    A = T.matrix if isinstance(T, ToeplitzMatrix) else np.asarray(T)
    _, s, vh = np.linalg.svd(A)
    m = A.shape[1]
    if mode == "threshold":
        cut = rel_tol * s[0]
        dim = int(np.sum(s < cut))
    elif mode == "gap":
        cut = ceiling * s[0]
        dim = _gap_cut(s, gap_min, ceiling)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    keep = s.size - dim
    if dim == 0:
        # no cut: measure the clearance of the smallest value above the detection threshold
        gap = s[-1] / (rel_tol * s[0]) if s[0] > 0 else np.inf
    else:
        gap = s[keep - 1] / s[keep] if keep > 0 and s[keep] > 0 else np.inf
    if gap < gap_min:
        warnings.warn(f"singular value gap ratio {gap:.3g} at the kernel cut", NoSpectralGap,
                      stacklevel=2)
    # vh has m rows; null directions are the trailing ones
    basis = vh[m - dim:].conj().T if dim else np.zeros((m, 0), dtype=np.complex128)
    tol = rel_tol if mode == "threshold" else gap_min
    return Subspace(basis, tol, s, float(gap))


def principal_angles(A, B):
    """Principal angles (radians, ascending) between two subspaces."""
    a = A.basis if isinstance(A, Subspace) else np.asarray(A)
    b = B.basis if isinstance(B, Subspace) else np.asarray(B)
    if a.shape[0] != b.shape[0]:
        raise DimMismatch(f"coefficient orders differ: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros(0)
    # sine-based formula keeps small angles accurate
    return np.sort(scipy.linalg.subspace_angles(a, b))


def write_spectrum_csv(path, sigma):
    """Write a singular value list with columns ``index, sigma``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "sigma"])
        for i, s in enumerate(np.asarray(sigma, dtype=float)):
            w.writerow([i, repr(float(s))])
