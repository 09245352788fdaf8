"""Shared domain types and the loss-ranked subset selection primitive.

Both iterative estimators (trimmed mean, trimmed least squares) reduce to
the same inner step: rank per-sample losses, keep the k = ceil(alpha * n)
smallest, refit on the kept set. The types and helpers here are used by
every other module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Snap tolerance for ceil(alpha * n): products within this distance of an
# integer are treated as that integer, so float noise like 0.8 * 10 ->
# 8.000000001 cannot change the subset size.
_ALPHA_SNAP = 1e-9


def _as_float_array(value, name, ndim):
    arr = np.asarray(value, dtype=float)
    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class SampleSet:
    """n points in d dimensions, optionally with generator ground truth.

    noise_scale holds, per point, the square root of the largest eigenvalue
    of that point's covariance matrix (generator metadata used by the
    oracle baseline and the diagnostics).
    """

    points: np.ndarray
    truth_mean: np.ndarray | None = None
    noise_scale: np.ndarray | None = None

    def __post_init__(self):
        points = _as_float_array(self.points, "points", 2)
        if points.shape[0] < 1 or points.shape[1] < 1:
            raise ValueError("points must be a non-empty n x d matrix")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)
        if self.truth_mean is not None:
            truth = _as_float_array(self.truth_mean, "truth_mean", 1)
            if truth.shape[0] != points.shape[1]:
                raise ValueError("truth_mean length must equal d")
            truth.setflags(write=False)
            object.__setattr__(self, "truth_mean", truth)
        if self.noise_scale is not None:
            scale = _as_float_array(self.noise_scale, "noise_scale", 1)
            if scale.shape[0] != points.shape[0]:
                raise ValueError("noise_scale length must equal n")
            if np.any(scale < 0):
                raise ValueError("noise_scale entries must be nonnegative")
            scale.setflags(write=False)
            object.__setattr__(self, "noise_scale", scale)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def d(self):
        return self.points.shape[1]


@dataclass(frozen=True)
class RegressionData:
    """Design matrix, response vector, and optional generator ground truth."""

    design: np.ndarray
    response: np.ndarray
    truth_beta: np.ndarray | None = None
    noise_sd: np.ndarray | None = None

    def __post_init__(self):
        design = _as_float_array(self.design, "design", 2)
        response = _as_float_array(self.response, "response", 1)
        if design.shape[0] != response.shape[0]:
            raise ValueError("design and response must have the same row count")
        design.setflags(write=False)
        response.setflags(write=False)
        object.__setattr__(self, "design", design)
        object.__setattr__(self, "response", response)
        if self.truth_beta is not None:
            beta = _as_float_array(self.truth_beta, "truth_beta", 1)
            if beta.shape[0] != design.shape[1]:
                raise ValueError("truth_beta length must equal d")
            beta.setflags(write=False)
            object.__setattr__(self, "truth_beta", beta)
        if self.noise_sd is not None:
            sd = _as_float_array(self.noise_sd, "noise_sd", 1)
            if sd.shape[0] != design.shape[0]:
                raise ValueError("noise_sd length must equal n")
            if np.any(sd < 0):
                raise ValueError("noise_sd entries must be nonnegative")
            sd.setflags(write=False)
            object.__setattr__(self, "noise_sd", sd)

    @property
    def n(self):
        return self.design.shape[0]

    @property
    def d(self):
        return self.design.shape[1]


# Guarantee regimes for the trimming fraction. The contraction argument
# needs alpha >= 4/5 for the mean estimator; any alpha > 2/3 still
# contracts, just slower, so such values are permitted with a warning flag.
ALPHA_GUARANTEE_MEAN = 4.0 / 5.0
ALPHA_CONTRACTION_FLOOR = 2.0 / 3.0


@dataclass(frozen=True)
class TrimConfig:
    """Trimming fraction, iteration count, and tie-break policy."""

    alpha: float = ALPHA_GUARANTEE_MEAN
    iterations: int = 20
    loss_tolerance: float = 0.0
    tie_break: str = "by_index"

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.loss_tolerance < 0:
            raise ValueError("loss_tolerance must be >= 0")
        if self.tie_break != "by_index":
            raise ValueError(f"unknown tie_break policy {self.tie_break!r}")

    @property
    def below_guarantee(self):
        """True when alpha is outside the alpha >= 4/5 guarantee regime."""
        return self.alpha < ALPHA_GUARANTEE_MEAN


@dataclass(frozen=True)
class Subset:
    """Sorted, duplicate-free sample indices in [0, n)."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(i < 0 for i in idx):
            raise ValueError("indices must be nonnegative")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def as_array(self):
        return np.array(self.indices, dtype=int)


@dataclass(frozen=True)
class IterateRecord:
    """One iteration of an alternating trimming run.

    loss_at_selection is the trimmed loss of the selecting iterate on the
    chosen subset; loss_after_update re-evaluates the same subset at the
    refitted estimate. Recording both makes the monotone-objective chain
    directly checkable.
    """

    estimate: np.ndarray
    subset: Subset
    loss_at_selection: float
    loss_after_update: float
    error_to_truth: float | None = None

    @property
    def trimmed_loss(self):
        return self.loss_at_selection


@dataclass(frozen=True)
class IterateTrace:
    """Full history of a run: the starting estimate plus every iteration."""

    initial_estimate: np.ndarray
    records: tuple[IterateRecord, ...] = field(default_factory=tuple)
    converged_at: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    def __len__(self):
        return len(self.records)

    def estimates(self):
        """Iterate sequence including the starting point."""
        return [self.initial_estimate] + [r.estimate for r in self.records]


def subset_size(n, alpha):
    """Return k = ceil(alpha * n), snapping near-integer products first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    product = alpha * n
    nearest = round(product)
    if abs(product - nearest) <= _ALPHA_SNAP:
        k = int(nearest)
    else:
        k = int(np.ceil(product))
    return max(1, min(k, n))


def select_lowest_loss(losses, k, tie_break="by_index"):
    """Indices of the k smallest losses; ties go to the smaller index."""
    if tie_break != "by_index":
        raise ValueError(f"unknown tie_break policy {tie_break!r}")
    losses = _as_float_array(losses, "losses", 1)
    n = losses.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    # Stable sort implements the by-index tie-break.
    order = np.argsort(losses, kind="stable")[:k]
    return Subset(tuple(sorted(int(i) for i in order)))
