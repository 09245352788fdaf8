"""Ground-truth baselines and exponential-time reference estimators.

The oracle baselines use the generator's noise metadata to pick the
low-noise block directly. The brute-force estimators enumerate every
size-k subset and therefore carry hard combinatorial guards; they exist
only to verify the iterative methods on tiny instances. The subset
conditioning extremes (smallest lambda_min and largest lambda_max of
X_S' X_S over size-k row subsets) get an exact enumerator and a sampled
surrogate for realistic n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .core import RegressionData, SampleSet, Subset
from .linalg import SingularSystemError, least_squares, sym_eig_extremes
from .datagen import make_rng

BRUTE_FORCE_SUBSET_LIMIT = 10**6
PSI_SUBSET_LIMIT = 10**5


class ResourceLimitError(RuntimeError):
    """Raised when an enumeration would exceed its combinatorial guard."""


@dataclass(frozen=True)
class PsiEstimate:
    """Extreme subset-conditioning value and how it was obtained."""

    k: int
    value: float
    method: str  # "exact" or "sampled"
    subsets_examined: int


def oracle_mean(samples: SampleSet, k) -> np.ndarray:
    """Average of the k samples with smallest noise scale (ties by index)."""
    if samples.noise_scale is None:
        raise ValueError("oracle_mean requires noise_scale metadata")
    if not 1 <= k <= samples.n:
        raise ValueError(f"k must be in [1, {samples.n}]")
    order = np.argsort(samples.noise_scale, kind="stable")[:k]
    return samples.points[order].mean(axis=0)


def oracle_ls(data: RegressionData, k) -> np.ndarray:
    """Least-squares fit on the k rows with smallest noise sd."""
    if data.noise_sd is None:
        raise ValueError("oracle_ls requires noise_sd metadata")
    if not data.d <= k <= data.n:
        raise ValueError(f"k must be in [{data.d}, {data.n}]")
    order = np.argsort(data.noise_sd, kind="stable")[:k]
    return least_squares(data.design[order], data.response[order])


def _check_guard(n, k, limit):
    total = comb(n, k)
    if total > limit:
        raise ResourceLimitError(
            f"C({n},{k}) = {total} subsets exceeds the guard of {limit}"
        )
    return total


def brute_force_trimmed_mean(samples: SampleSet, k):
    """Global minimizer of the trimmed squared loss over all size-k subsets.

    For a fixed subset the inner minimizer is its average, so only the
    subset needs enumerating. Ties resolve to the lexicographically
    smallest subset. Returns (mu, subset, loss).
    """
    n = samples.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    _check_guard(n, k, BRUTE_FORCE_SUBSET_LIMIT)
    best = None
    for subset in combinations(range(n), k):
        pts = samples.points[list(subset)]
        mu = pts.mean(axis=0)
        diff = pts - mu
        loss = float(np.einsum("ij,ij->i", diff, diff).sum())
        if best is None or loss < best[2]:
            best = (mu, Subset(subset), loss)
    return best


def brute_force_trimmed_ls(data: RegressionData, k):
    """Global minimizer of the trimmed least-squares loss over size-k subsets.

    Rank-deficient subsets are skipped; returns (beta, subset, loss).
    """
    n = data.n
    if not data.d <= k <= n:
        raise ValueError(f"k must be in [{data.d}, {n}]")
    _check_guard(n, k, BRUTE_FORCE_SUBSET_LIMIT)
    best = None
    skipped = 0
    for subset in combinations(range(n), k):
        idx = list(subset)
        try:
            beta = least_squares(data.design[idx], data.response[idx])
        except SingularSystemError:
            skipped += 1
            continue
        r = data.response[idx] - data.design[idx] @ beta
        loss = float(r @ r)
        if best is None or loss < best[2]:
            best = (beta, Subset(subset), loss)
    if best is None:
        raise SingularSystemError(
            f"every size-{k} subset was rank deficient ({skipped} skipped)"
        )
    return best


def _subset_gram_extreme(design, subset, want_max):
    sub = design[list(subset)]
    lam_min, lam_max = sym_eig_extremes(sub.T @ sub)
    return lam_max if want_max else lam_min


def psi_minus_exact(design, k) -> PsiEstimate:
    """Exact minimum of lambda_min(X_S' X_S) over all size-k row subsets."""
    design = np.asarray(design, dtype=float)
    n = design.shape[0]
    total = _check_guard(n, k, PSI_SUBSET_LIMIT)
    value = min(
        _subset_gram_extreme(design, s, want_max=False)
        for s in combinations(range(n), k)
    )
    return PsiEstimate(k=k, value=float(value), method="exact", subsets_examined=total)


def psi_plus_exact(design, k) -> PsiEstimate:
    """Exact maximum of lambda_max(X_S' X_S) over all size-k row subsets."""
    design = np.asarray(design, dtype=float)
    n = design.shape[0]
    total = _check_guard(n, k, PSI_SUBSET_LIMIT)
    value = max(
        _subset_gram_extreme(design, s, want_max=True)
        for s in combinations(range(n), k)
    )
    return PsiEstimate(k=k, value=float(value), method="exact", subsets_examined=total)


def psi_minus_sampled(design, k, trials, seed) -> PsiEstimate:
    """Sampled surrogate: minimum over `trials` random size-k subsets.

    Always an upper bound on the exact value, since sampling can only
    miss the true minimizer.
    """
    design = np.asarray(design, dtype=float)
    n = design.shape[0]
    if trials < 1:
        raise ValueError("trials must be >= 1")
    total = comb(n, k)
    if total <= trials and total <= PSI_SUBSET_LIMIT:
        # Budget covers the whole space: enumerate instead of sampling so
        # full coverage reproduces the exact value bit-for-bit.
        subsets = combinations(range(n), k)
        examined = total
    else:
        rng = make_rng(seed, 9000, n, k)
        # Sorted indices keep the float evaluation identical to the exact
        # enumerator on the same subset.
        subsets = (
            tuple(sorted(rng.choice(n, size=k, replace=False))) for _ in range(trials)
        )
        examined = trials
    value = min(_subset_gram_extreme(design, s, want_max=False) for s in subsets)
    return PsiEstimate(
        k=k, value=float(value), method="sampled", subsets_examined=examined
    )
