"""Minimal dense linear algebra used by the estimators and generators.

Least squares goes through a QR factorization (never the normal
equations) with an explicit rank check, because the regression iteration
solves on data-dependent subsets whose conditioning is only
probabilistically controlled. Eigen-extremes and Cholesky are thin,
validated wrappers around dense routines.
"""

from __future__ import annotations

import numpy as np

SYMMETRY_RTOL = 1e-12
RANK_RTOL = 1e-10


class SingularSystemError(ValueError):
    """Raised when a least-squares design is numerically rank deficient."""

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class FactorizationError(ValueError):
    """Raised when a Cholesky factorization hits a non-positive pivot."""

    def __init__(self, message, pivot_index=None):
        super().__init__(message)
        self.pivot_index = pivot_index


def check_symmetric(m, rtol=SYMMETRY_RTOL):
    """Validate a dense symmetric matrix and return it as a float array."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    scale = max(np.abs(m).max(), 1.0)
    if np.abs(m - m.T).max() > rtol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    return m


def least_squares(design, response):
    """Solve min_beta ||response - design @ beta||_2 via QR.

    Raises SingularSystemError (carrying the numerical rank estimate) when
    the design is rank deficient at relative tolerance RANK_RTOL.
    """
    design = np.asarray(design, dtype=float)
    response = np.asarray(response, dtype=float)
    if design.ndim != 2:
        raise ValueError("design must be a matrix")
    m, d = design.shape
    if response.shape != (m,):
        raise ValueError("response length must match design rows")
    if m < d:
        raise ValueError(f"underdetermined system: {m} rows < {d} columns")
    q, r = np.linalg.qr(design)
    diag = np.abs(np.diag(r))
    threshold = RANK_RTOL * (diag.max() if diag.size else 0.0)
    rank = int(np.sum(diag > threshold))
    if rank < d:
        raise SingularSystemError(
            f"design is rank deficient (rank {rank} < {d})", rank=rank
        )
    return np.linalg.solve(r, q.T @ response)


def sym_eig_extremes(m):
    """Smallest and largest eigenvalue of a symmetric matrix."""
    m = check_symmetric(m)
    eigvals = np.linalg.eigvalsh(m)
    return float(eigvals[0]), float(eigvals[-1])


def cholesky(m):
    """Lower-triangular L with L @ L.T == m, for symmetric positive definite m.

    A failed (non-positive) pivot raises FactorizationError with the pivot
    index, which is more informative than the generic dense-library error.
    """
    m = check_symmetric(m)
    d = m.shape[0]
    lower = np.zeros_like(m)
    for j in range(d):
        pivot = m[j, j] - lower[j, :j] @ lower[j, :j]
        if pivot <= 0.0:
            raise FactorizationError(
                f"matrix is not positive definite (pivot {j} = {pivot:.3e})",
                pivot_index=j,
            )
        lower[j, j] = np.sqrt(pivot)
        if j + 1 < d:
            lower[j + 1 :, j] = (
                m[j + 1 :, j] - lower[j + 1 :, :j] @ lower[j, :j]
            ) / lower[j, j]
    return lower
