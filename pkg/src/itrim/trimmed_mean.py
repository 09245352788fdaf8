"""Iterative trimmed mean: alternate between keeping the k points nearest
the current estimate and re-averaging over the kept set.

Starting from the grand mean, each round selects the ceil(alpha*n)
samples with smallest squared distance to the current iterate and
replaces the iterate with their average. The trimmed objective is
non-increasing along the run because the average is the exact minimizer
over the selected subset and the next selection minimizes over subsets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    IterateRecord,
    IterateTrace,
    SampleSet,
    Subset,
    TrimConfig,
    select_lowest_loss,
    subset_size,
)


@dataclass(frozen=True)
class MeanEstimate:
    """Final mean estimate plus the full iteration trace."""

    value: np.ndarray
    trace: IterateTrace


def mean_losses(samples: SampleSet, mu) -> np.ndarray:
    """Per-sample squared distances ||x_i - mu||^2."""
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (samples.d,):
        raise ValueError(f"mu must have length {samples.d}, got shape {mu.shape}")
    diff = samples.points - mu
    return np.einsum("ij,ij->i", diff, diff)


def itm_step(samples: SampleSet, mu_t, k, tie_break="by_index"):
    """One selection + re-averaging round.

    Returns (mu_next, subset, trimmed_loss) where trimmed_loss is the
    selected loss evaluated at the selecting iterate mu_t.
    """
    losses = mean_losses(samples, mu_t)
    subset = select_lowest_loss(losses, k, tie_break)
    idx = subset.as_array()
    mu_next = samples.points[idx].mean(axis=0)
    trimmed_loss = float(losses[idx].sum())
    return mu_next, subset, trimmed_loss


def itm(samples: SampleSet, config: TrimConfig) -> MeanEstimate:
    """Run the full iterative trimmed mean for config.iterations rounds.

    Always runs the configured number of rounds; converged_at records the
    first round at which the subset repeated and the estimate moved less
    than config.loss_tolerance.
    """
    if samples.n < 1:
        raise ValueError("sample set is empty")
    k = subset_size(samples.n, config.alpha)
    mu = samples.points.mean(axis=0)
    truth = samples.truth_mean

    records = []
    converged_at = None
    prev_subset: Subset | None = None
    for t in range(config.iterations):
        mu_next, subset, loss_sel = itm_step(samples, mu, k, config.tie_break)
        idx = subset.as_array()
        diff = samples.points[idx] - mu_next
        loss_post = float(np.einsum("ij,ij->i", diff, diff).sum())
        error = float(np.linalg.norm(mu_next - truth)) if truth is not None else None
        records.append(
            IterateRecord(
                estimate=mu_next,
                subset=subset,
                loss_at_selection=loss_sel,
                loss_after_update=loss_post,
                error_to_truth=error,
            )
        )
        if (
            converged_at is None
            and subset == prev_subset
            and np.linalg.norm(mu_next - mu) <= config.loss_tolerance
        ):
            converged_at = t
        prev_subset = subset
        mu = mu_next

    trace = IterateTrace(
        initial_estimate=samples.points.mean(axis=0),
        records=records,
        converged_at=converged_at,
    )
    return MeanEstimate(value=mu, trace=trace)
