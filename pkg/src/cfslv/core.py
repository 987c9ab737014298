"""Core lattice types and the integer quadratic objective.

Everything downstream works with a positive definite Gram matrix G and
scores integer vectors by f(a) = a^T G a.  The types here validate
their invariants once at construction so the solvers can stay lean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import jacobi_eigh

SYMMETRY_RTOL = 1e-12
RANK_SV_RTOL = 1e-10


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChannelVector:
    """Real vector of channel gains, any length >= 1."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 1 or entries.size < 1:
            raise ValueError("channel must be a one-dimensional vector of length >= 1")
        if not np.all(np.isfinite(entries)):
            raise ValueError("channel gains must be finite")
        object.__setattr__(self, "entries", _freeze(entries))

    @property
    def n(self) -> int:
        return self.entries.size


@dataclass(frozen=True)
class CoefficientVector:
    """Nonzero integer coefficient vector."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        raw = np.asarray(self.entries)
        entries = np.array(raw, dtype=np.int64)
        if not np.issubdtype(raw.dtype, np.integer):
            if np.any(entries != np.asarray(raw, dtype=float)):
                raise ValueError("coefficients must be integers")
        if entries.ndim != 1 or entries.size < 1:
            raise ValueError("coefficients must form a one-dimensional vector")
        if not entries.any():
            raise ValueError("coefficient vector must be nonzero")
        object.__setattr__(self, "entries", _freeze(entries))

    @property
    def n(self) -> int:
        return self.entries.size


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric positive definite matrix defining the lattice norm.

    Construction enforces symmetry to a 1e-12 relative tolerance (then
    symmetrizes exactly) and positive definiteness via an eigenvalue
    check.  Entries are stored read-only.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        g = np.array(self.entries, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 1:
            raise ValueError("Gram matrix must be square")
        if not np.all(np.isfinite(g)):
            raise ValueError("Gram matrix entries must be finite")
        gap = np.abs(g - g.T)
        if np.any(gap > SYMMETRY_RTOL * np.maximum(1.0, np.abs(g))):
            raise ValueError("Gram matrix is not symmetric within 1e-12 relative tolerance")
        g = 0.5 * (g + g.T)
        lam_min = float(jacobi_eigh(g)[0][-1])
        if not lam_min > 0.0:
            raise ValueError(
                f"Gram matrix is not positive definite (smallest eigenvalue {lam_min:.3e})"
            )
        object.__setattr__(self, "entries", _freeze(g))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class DpkDecomposition:
    """Diagonal-minus-low-rank form G = diag(d) - V V^T.

    d must be strictly positive, V must have full column rank, and the
    difference must remain positive definite.
    """

    d: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        d = np.array(self.d, dtype=float)
        v = np.array(self.v, dtype=float)
        if d.ndim != 1 or d.size < 1:
            raise ValueError("d must be a one-dimensional vector")
        if v.ndim != 2 or v.shape[0] != d.size:
            raise ValueError("V must be an n-by-k matrix matching d")
        if not (v.shape[1] >= 1 and v.shape[1] <= d.size):
            raise ValueError("rank k must satisfy 1 <= k <= n")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(v))):
            raise ValueError("decomposition entries must be finite")
        if not np.all(d > 0.0):
            raise ValueError("diagonal entries must be strictly positive")
        sv = np.linalg.svd(v, compute_uv=False)
        if sv[0] == 0.0 or sv[-1] <= RANK_SV_RTOL * sv[0]:
            raise ValueError("V must have full column rank")
        m = np.diag(d) - v @ v.T
        lam_min = float(jacobi_eigh(0.5 * (m + m.T))[0][-1])
        if not lam_min > 0.0:
            raise ValueError("diag(d) - V V^T is not positive definite")
        object.__setattr__(self, "d", _freeze(d))
        object.__setattr__(self, "v", _freeze(v))

    @property
    def n(self) -> int:
        return self.d.size

    @property
    def k(self) -> int:
        return self.v.shape[1]


@dataclass(frozen=True)
class SolverResult:
    """Outcome of one exact search.

    f_star is the objective recomputed from scratch at a_star, so it is
    reproducible independent of any incremental arithmetic used during
    the search.  witness_point is the real point whose coordinate-wise
    rounding produced a_star (None when a unit vector won outright).
    """

    a_star: CoefficientVector
    f_star: float
    candidates_evaluated: int
    breakpoint_count: int
    elapsed_seconds: float
    witness_point: np.ndarray | None = None

    def __post_init__(self) -> None:
        if not (np.isfinite(self.f_star) and self.f_star > 0.0):
            raise ValueError("objective value must be finite and positive")
        if self.candidates_evaluated < 1:
            raise ValueError("at least one candidate must have been evaluated")
        if self.breakpoint_count < 0 or self.elapsed_seconds < 0.0:
            raise ValueError("counts and timings must be nonnegative")
        if self.witness_point is not None:
            w = np.array(self.witness_point, dtype=float)
            object.__setattr__(self, "witness_point", _freeze(w))


def as_channel_vector(h) -> ChannelVector:
    return h if isinstance(h, ChannelVector) else ChannelVector(h)


def as_coefficient_vector(a) -> CoefficientVector:
    return a if isinstance(a, CoefficientVector) else CoefficientVector(a)


def as_gram_matrix(g) -> GramMatrix:
    return g if isinstance(g, GramMatrix) else GramMatrix(g)


def quad_objective(g_entries: np.ndarray, a_entries: np.ndarray) -> float:
    """a^T G a on raw arrays; no validation, for internal hot paths."""
    v = np.asarray(a_entries, dtype=float)
    return float(v @ g_entries @ v)


def quadratic_form(g, a) -> float:
    """Evaluate f(a) = a^T G a for a validated pair."""
    g = as_gram_matrix(g)
    a = as_coefficient_vector(a)
    if a.n != g.n:
        raise ValueError(f"dimension mismatch: matrix is {g.n}, vector is {a.n}")
    return quad_objective(g.entries, a.entries)


def round_half_up_vector(v) -> np.ndarray:
    """Round each entry to the nearest integer, halves toward +infinity.

    This is floor(v + 0.5) applied elementwise, not banker's rounding:
    round_half_up_vector([0.5, 1.5, -0.5]) == [1, 2, 0].
    """
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("cannot round non-finite values")
    return np.floor(v + 0.5).astype(np.int64)


def canonical_sign(a) -> CoefficientVector:
    """Flip a to -a if its first nonzero entry is negative.

    f(a) = f(-a), so solvers report the representative whose leading
    nonzero entry is positive.
    """
    a = as_coefficient_vector(a)
    first = a.entries[np.flatnonzero(a.entries)[0]]
    return a if first > 0 else CoefficientVector(-a.entries)
