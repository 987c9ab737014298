"""Symmetric eigendecomposition via cyclic Jacobi rotations.

Self-contained kernel for the small dense matrices this package works
with (dimensions in the tens).  Eigenvalues are returned in descending
order with orthonormal eigenvectors as columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

SWEEP_LIMIT = 100
OFF_DIAGONAL_RTOL = 1e-12  # relative to the Frobenius norm of the input
RECONSTRUCTION_TOL = 1e-9
SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix.

    Attributes
    ----------
    values : ndarray, shape (n,)
        Eigenvalues sorted in descending order.
    vectors : ndarray, shape (n, n)
        Orthonormal eigenvectors; column j pairs with values[j].
    """

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        vectors = np.array(self.vectors, dtype=float)
        if values.ndim != 1 or vectors.shape != (values.size, values.size):
            raise ValueError("eigenvalue/eigenvector shapes are inconsistent")
        if np.any(values[:-1] < values[1:]):
            raise ValueError("eigenvalues must be sorted in descending order")
        values.setflags(write=False)
        vectors.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "vectors", vectors)


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a symmetric matrix with cyclic Jacobi sweeps.

    Returns (values, vectors) with values descending.  Raises
    ConvergenceError if the off-diagonal norm has not dropped below
    OFF_DIAGONAL_RTOL times the Frobenius norm after SWEEP_LIMIT sweeps.
    The input is not modified; symmetry is assumed, not checked.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n)
    tol = OFF_DIAGONAL_RTOL * max(float(np.linalg.norm(a)), 1e-300)
    converged = False
    for _ in range(SWEEP_LIMIT):
        if _offdiag_norm(a) <= tol:
            converged = True
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if apr == 0.0:
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                a[[p, r], :] = rot.T @ a[[p, r], :]
                a[:, [p, r]] = a[:, [p, r]] @ rot
                a[p, r] = 0.0
                a[r, p] = 0.0
                q[:, [p, r]] = q[:, [p, r]] @ rot
    else:
        converged = _offdiag_norm(a) <= tol
    if not converged:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge in {SWEEP_LIMIT} sweeps"
        )
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], q[:, order]


def symmetric_eig(a: np.ndarray) -> EigenDecomposition:
    """Validated eigendecomposition of a symmetric matrix.

    The input must be square, finite, and symmetric to within a 1e-12
    relative tolerance; it is symmetrized before factoring.  The result
    is checked by reconstruction: max |Q diag(w) Q^T - A| must not
    exceed 1e-9 relative to the largest entry of A.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError("expected a square matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    gap = np.abs(a - a.T)
    if np.any(gap > SYMMETRY_RTOL * np.maximum(1.0, np.abs(a))):
        raise ValueError("matrix is not symmetric within 1e-12 relative tolerance")
    sym = 0.5 * (a + a.T)
    values, vectors = jacobi_eigh(sym)
    recon = (vectors * values) @ vectors.T
    scale = max(1.0, float(np.max(np.abs(sym))))
    resid = float(np.max(np.abs(recon - sym)))
    if resid > RECONSTRUCTION_TOL * scale:
        raise ConvergenceError(
            f"eigendecomposition reconstruction residual {resid:.3e} exceeds tolerance"
        )
    return EigenDecomposition(values=values, vectors=vectors)
