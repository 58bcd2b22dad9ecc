# src/emin_lab/experiments/stats.py
"""
Statistical oracles for the Monte Carlo runs.

  - mann_kendall: monotone-trend test of a sequence against its index.
  - haar_marginal_ks: goodness of fit of sampled marginal populations to the
    exact law for Haar-random two-qubit pure states.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import kendalltau, kstest

from emin_lab.config import TREND_SIGNIFICANCE


@dataclass(frozen=True)
class TrendResult:
    tau: float
    p_value: float
    n_points: int
    significance: float = TREND_SIGNIFICANCE

    @property
    def increasing(self) -> bool:
        return self.p_value < self.significance


def mann_kendall(values: Sequence[float], significance: float = TREND_SIGNIFICANCE) -> TrendResult:
    """One-sided Kendall tau of `values` against 0..n-1 (alternative: increasing)."""
    y = np.asarray(values, dtype=np.float64)
    if y.size < 3 or np.all(y == y[0]):
        return TrendResult(tau=0.0, p_value=1.0, n_points=int(y.size), significance=significance)
    result = kendalltau(np.arange(y.size), y, alternative="greater")
    tau = float(result.statistic)
    p_value = float(result.pvalue)
    if not np.isfinite(p_value):
        p_value = 1.0
    return TrendResult(tau=tau, p_value=p_value, n_points=int(y.size), significance=significance)


def haar_marginal_cdf(lam) -> np.ndarray:
    """
    CDF of the larger marginal population of a Haar-random pure state on C^2 (x) C^2.

    The marginal Bloch vector is uniform in the ball, so with lam = (1 + r)/2,
    F(lam) = (2 lam - 1)^3 on [1/2, 1].
    """
    lam = np.asarray(lam, dtype=np.float64)
    return np.clip(2.0 * lam - 1.0, 0.0, 1.0) ** 3


def haar_marginal_ks(largest_populations: Sequence[float]) -> tuple[float, float]:
    """KS statistic and p-value of sampled larger populations against haar_marginal_cdf."""
    result = kstest(np.asarray(largest_populations, dtype=np.float64), haar_marginal_cdf)
    return float(result.statistic), float(result.pvalue)
