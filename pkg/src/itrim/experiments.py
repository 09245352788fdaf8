"""Paired Monte-Carlo experiment runners behind the command line.

Each trial generates one dataset and runs both the iterative method and
its oracle baseline on that same realization, so the comparison is
paired. Per-trial rows are emitted alongside per-(method, n) aggregate
rows (trial index -1), and rows are sorted so output bytes never depend
on execution order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

import numpy as np

from .core import Subset, TrimConfig, subset_size
from .datagen import MeanSetting, gen_mean_data, gen_regression_data
from .diagnostics import (
    contraction_trace,
    lemma1_check,
    report_from_margins,
    theorem_error_check,
)
from .oracle import (
    PSI_SUBSET_LIMIT,
    oracle_ls,
    oracle_mean,
    psi_minus_exact,
    psi_minus_sampled,
)
from .trimmed_mean import itm
from .trimmed_regression import itsm, normalize_rows

METHODS = ("ITM", "OM", "ITSM", "OLS")


@dataclass(frozen=True)
class TrialResult:
    """One (method, dataset) outcome; trial_index -1 marks an aggregate."""

    method: str
    n: int
    d: int
    trial_index: int
    final_error: float
    runtime_ms: float
    converged_at: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.final_error < 0:
            raise ValueError("final_error must be >= 0")


def _aggregate(rows):
    """Mean final error and runtime per (method, n), with trial_index -1."""
    keys = sorted({(r.method, r.n, r.d) for r in rows})
    out = []
    for method, n, d in keys:
        group = [r for r in rows if r.method == method and r.n == n]
        out.append(
            TrialResult(
                method=method,
                n=n,
                d=d,
                trial_index=-1,
                final_error=float(np.mean([r.final_error for r in group])),
                runtime_ms=float(np.mean([r.runtime_ms for r in group])),
                converged_at=None,
            )
        )
    return out


def _sorted_with_aggregates(rows):
    rows = sorted(rows, key=lambda r: (r.method, r.n, r.trial_index))
    return rows + _aggregate(rows)


def run_mean_experiment(
    setting, n_list, alpha=0.8, iterations=20, trials=50, seed=0, d=10
):
    """Paired ITM vs oracle-mean trials over a grid of sample sizes."""
    config = TrimConfig(alpha=alpha, iterations=iterations)
    rows = []
    for n in n_list:
        for r in range(trials):
            ms = MeanSetting(
                setting=setting,
                n=n,
                alpha=alpha,
                d=d,
                seed=_trial_seed(seed, n, r),
            )
            data = gen_mean_data(ms)
            k = subset_size(n, alpha)
            start = time.perf_counter()
            est = itm(data, config)
            itm_ms = (time.perf_counter() - start) * 1000.0
            itm_err = float(np.linalg.norm(est.value - data.truth_mean))
            start = time.perf_counter()
            om = oracle_mean(data, k)
            om_ms = (time.perf_counter() - start) * 1000.0
            om_err = float(np.linalg.norm(om - data.truth_mean))
            rows.append(
                TrialResult("ITM", n, data.d, r, itm_err, itm_ms, est.trace.converged_at)
            )
            rows.append(TrialResult("OM", n, data.d, r, om_err, om_ms, None))
    return _sorted_with_aggregates(rows)


def run_regression_experiment(
    n_list, d=100, alpha=0.8, iterations=20, trials=20, seed=0, normalize=False
):
    """Paired ITSM vs oracle-least-squares trials over a grid of sizes."""
    config = TrimConfig(alpha=alpha, iterations=iterations)
    rows = []
    for n in n_list:
        if n <= d:
            raise ValueError(f"need n > d for every n, got n={n}, d={d}")
        for r in range(trials):
            data = gen_regression_data(n, d, alpha, _trial_seed(seed, n, r))
            k = subset_size(n, alpha)
            start = time.perf_counter()
            est = itsm(data, config, normalize=normalize)
            itsm_ms = (time.perf_counter() - start) * 1000.0
            itsm_err = float(np.linalg.norm(est.value - data.truth_beta))
            start = time.perf_counter()
            ols = oracle_ls(data, k)
            ols_ms = (time.perf_counter() - start) * 1000.0
            ols_err = float(np.linalg.norm(ols - data.truth_beta))
            rows.append(
                TrialResult(
                    "ITSM", n, d, r, itsm_err, itsm_ms, est.trace.converged_at
                )
            )
            rows.append(TrialResult("OLS", n, d, r, ols_err, ols_ms, None))
    return _sorted_with_aggregates(rows)


def _trial_seed(seed, n, trial):
    """Derive a per-trial stream key; keeps trials independent and stable."""
    return (int(seed) << 24) ^ (int(n) << 8) ^ int(trial)


def run_diagnose(
    setting,
    n,
    alpha=0.8,
    iterations=20,
    trials=200,
    seed=0,
    d=10,
    psi_n=10,
    psi_d=2,
    psi_trials=64,
):
    """Bound-check reports for one mean setting plus a conditioning probe.

    Returns a JSON-ready dict with the subset-distance bound, the
    per-iteration contraction bound, the final-error envelope, and the
    subset-conditioning estimate (with its derived c1 = k / value).
    """
    config = TrimConfig(alpha=alpha, iterations=iterations)
    k = subset_size(n, alpha)
    lemma_margins = []
    contraction_margins = []
    envelope_margins = []
    for r in range(trials):
        ms = MeanSetting(
            setting=setting, n=n, alpha=alpha, d=d, seed=_trial_seed(seed, n, r)
        )
        data = gen_mean_data(ms)
        low_block = Subset(tuple(range(k)))
        lemma_margins.append(lemma1_check(data, low_block))
        est = itm(data, config)
        contraction_margins.extend(contraction_trace(est.trace, data, alpha))
        envelope_margins.append(theorem_error_check(est.value, data, alpha))

    reg = normalize_rows(gen_regression_data(psi_n, psi_d, alpha, seed))
    psi_k = subset_size(psi_n, alpha)
    sampled = psi_minus_sampled(reg.design, psi_k, psi_trials, seed)
    exact = None
    if comb(psi_n, psi_k) <= PSI_SUBSET_LIMIT:
        exact = psi_minus_exact(reg.design, psi_k)
    psi_value = exact.value if exact is not None else sampled.value
    return {
        "config": {
            "setting": setting,
            "n": n,
            "alpha": alpha,
            "iterations": iterations,
            "trials": trials,
            "seed": seed,
            "d": d if setting in (3, 4) else 1,
        },
        "lemma1": report_from_margins("subset_distance_bound", lemma_margins).to_dict(),
        "contraction": report_from_margins(
            "halving_contraction", contraction_margins
        ).to_dict(),
        "theorem_envelope": report_from_margins(
            "final_error_envelope", envelope_margins
        ).to_dict(),
        "psi_minus": {
            "n": psi_n,
            "d": psi_d,
            "k": psi_k,
            "sampled_value": sampled.value,
            "sampled_subsets": sampled.subsets_examined,
            "exact_value": None if exact is None else exact.value,
            "c1_estimate": psi_k / psi_value if psi_value > 0 else None,
        },
    }
