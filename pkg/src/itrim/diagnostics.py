"""Empirical checks of the per-iteration contraction and error bounds.

Every check returns a signed margin (bound minus observed quantity, so
nonnegative means the bound held). The bounds are probabilistic, so
single margins are reported, never asserted; aggregation over trials
happens in BoundCheckReport.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import IterateTrace, RegressionData, SampleSet, Subset, subset_size

# Envelope constant for the final-error checks. The halving contraction
# sums to a factor 4 on the per-round bias term; the extra unit absorbs
# the geometrically vanishing initial-error term.
DEFAULT_ENVELOPE_CONSTANT = 5.0


@dataclass(frozen=True)
class BoundCheckReport:
    """Aggregate of one bound over many trials."""

    bound_name: str
    trials: int
    violations: int
    details: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.violations > self.trials:
            raise ValueError("violations cannot exceed trials")
        object.__setattr__(self, "details", tuple(float(m) for m in self.details))

    @property
    def empirical_rate(self):
        """Fraction of trials on which the bound held."""
        return 1.0 - self.violations / self.trials

    def to_dict(self):
        return {
            "bound_name": self.bound_name,
            "trials": self.trials,
            "violations": self.violations,
            "empirical_rate": self.empirical_rate,
            "details": list(self.details),
        }


def report_from_margins(bound_name, margins) -> BoundCheckReport:
    """Build a report counting negative margins as violations."""
    margins = [float(m) for m in margins]
    violations = sum(1 for m in margins if m < 0)
    return BoundCheckReport(
        bound_name=bound_name,
        trials=len(margins),
        violations=violations,
        details=tuple(margins),
    )


def noise_order_statistic(scales, k):
    """k-th smallest entry (1-based k) of a nonnegative scale vector."""
    scales = np.asarray(scales, dtype=float)
    if not 1 <= k <= scales.shape[0]:
        raise ValueError(f"k must be in [1, {scales.shape[0]}]")
    return float(np.sort(scales)[k - 1])


def lemma1_check(samples: SampleSet, subset: Subset):
    """Margin of the total-distance bound on a subset.

    Bound: sum_{i in S} ||x_i - mu*|| <= 2 |S| sqrt(lambda_S d), where
    lambda_S is the largest per-point variance scale over S. Holds with
    probability at least 1 - 1/|S|.
    """
    if samples.truth_mean is None or samples.noise_scale is None:
        raise ValueError("lemma1_check requires truth_mean and noise_scale")
    idx = subset.as_array()
    lam_s = float(np.max(samples.noise_scale[idx] ** 2))
    distances = np.linalg.norm(samples.points[idx] - samples.truth_mean, axis=1)
    bound = 2.0 * len(subset) * np.sqrt(lam_s * samples.d)
    return float(bound - distances.sum())


def contraction_trace(trace: IterateTrace, samples: SampleSet, alpha):
    """Per-iteration margins of the halving contraction bound.

    For each round: ||mu_{t+1} - mu*|| <= 0.5 ||mu_t - mu*|| +
    2 sqrt(d * lambda_(k)) with k = ceil(alpha*n); returns RHS - LHS per
    round. Negative entries are violations of a probabilistic bound, so
    callers aggregate rather than assert.
    """
    if samples.truth_mean is None or samples.noise_scale is None:
        raise ValueError("contraction_trace requires truth_mean and noise_scale")
    k = subset_size(samples.n, alpha)
    lam_k = noise_order_statistic(samples.noise_scale, k) ** 2
    bias = 2.0 * np.sqrt(samples.d * lam_k)
    estimates = trace.estimates()
    truth = samples.truth_mean
    margins = []
    for prev, curr in zip(estimates, estimates[1:]):
        lhs = np.linalg.norm(curr - truth)
        rhs = 0.5 * np.linalg.norm(prev - truth) + bias
        margins.append(float(rhs - lhs))
    return margins


def theorem_error_check(estimate, samples: SampleSet, alpha, c=DEFAULT_ENVELOPE_CONSTANT):
    """Margin of the final-error envelope c * sqrt(d * lambda_(k))."""
    if samples.truth_mean is None or samples.noise_scale is None:
        raise ValueError("theorem_error_check requires truth_mean and noise_scale")
    k = subset_size(samples.n, alpha)
    lam_k = noise_order_statistic(samples.noise_scale, k) ** 2
    bound = c * np.sqrt(samples.d * lam_k)
    error = np.linalg.norm(np.asarray(estimate, dtype=float) - samples.truth_mean)
    return float(bound - error)


def regression_error_check(
    estimate, data: RegressionData, alpha, c1, c=DEFAULT_ENVELOPE_CONSTANT
):
    """Margin of the regression error envelope c * c1 * sigma_(k).

    c1 is the measured conditioning constant k / psi_minus(k) from the
    sampled subset-conditioning diagnostic.
    """
    if data.truth_beta is None or data.noise_sd is None:
        raise ValueError("regression_error_check requires truth_beta and noise_sd")
    k = subset_size(data.n, alpha)
    sigma_k = noise_order_statistic(data.noise_sd, k)
    bound = c * c1 * sigma_k
    error = np.linalg.norm(np.asarray(estimate, dtype=float) - data.truth_beta)
    return float(bound - error)
