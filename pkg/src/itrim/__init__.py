"""Iterative trimming estimators for entangled heteroscedastic data.

Mean estimation and linear regression where each sample carries its own
noise level: alternately trim to the best-fitting fraction of samples
and refit on the kept set. Includes oracle baselines, brute-force
trimmed-loss references, synthetic generators, bound diagnostics, and a
benchmark CLI.
"""

from .core import (
    IterateRecord,
    IterateTrace,
    RegressionData,
    SampleSet,
    Subset,
    TrimConfig,
    select_lowest_loss,
    subset_size,
)
from .datagen import (
    MeanSetting,
    gen_mean_data,
    gen_psd_setting4,
    gen_regression_data,
    make_rng,
    sample_gaussian,
)
from .trimmed_mean import MeanEstimate, itm, itm_step, mean_losses
from .trimmed_regression import (
    BetaEstimate,
    itsm,
    itsm_step,
    normalize_rows,
    squared_residuals,
)
from .oracle import (
    PsiEstimate,
    brute_force_trimmed_ls,
    brute_force_trimmed_mean,
    oracle_ls,
    oracle_mean,
    psi_minus_exact,
    psi_minus_sampled,
    psi_plus_exact,
)
from .diagnostics import (
    BoundCheckReport,
    contraction_trace,
    lemma1_check,
    regression_error_check,
    theorem_error_check,
)

__version__ = "0.1.0"

__all__ = [
    "BetaEstimate",
    "BoundCheckReport",
    "IterateRecord",
    "IterateTrace",
    "MeanEstimate",
    "MeanSetting",
    "PsiEstimate",
    "RegressionData",
    "SampleSet",
    "Subset",
    "TrimConfig",
    "brute_force_trimmed_ls",
    "brute_force_trimmed_mean",
    "contraction_trace",
    "gen_mean_data",
    "gen_psd_setting4",
    "gen_regression_data",
    "itm",
    "itm_step",
    "itsm",
    "itsm_step",
    "lemma1_check",
    "make_rng",
    "mean_losses",
    "normalize_rows",
    "oracle_ls",
    "oracle_mean",
    "psi_minus_exact",
    "psi_minus_sampled",
    "psi_plus_exact",
    "regression_error_check",
    "sample_gaussian",
    "select_lowest_loss",
    "squared_residuals",
    "subset_size",
    "theorem_error_check",
]
