"""Sequential-stage absorption processes.

A chain is an ordered list of transient stages, each left at an exponential
rate, followed by an implicit absorbing stage.  The absorption time is then a
convolution of exponentials: Erlang for equal rates, hypoexponential for
distinct rates, and EME for the k-equal-stages-plus-one-odd-stage layout.
``validate_against`` closes the loop by comparing simulated absorption times
with the analytic laws via the Kolmogorov-Smirnov distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import as_values
from .distributions import Sample, _check_count, _check_rate, _std_exp
from .errors import ParameterError

# Asymptotic 1% Kolmogorov-Smirnov critical constant: pass below 1.63/sqrt(N).
KS_CRITICAL_1PCT = 1.63


@dataclass(frozen=True)
class StageChain:
    """Ordered transient stages; ``rates[i]`` is the rate of leaving stage i."""

    rates: tuple

    def __post_init__(self):
        rates = tuple(_check_rate(r, "stage rate") for r in np.atleast_1d(self.rates))
        if not rates:
            raise ParameterError("a chain needs at least one stage")
        object.__setattr__(self, "rates", rates)

    def __len__(self):
        return len(self.rates)

    @property
    def mean(self):
        return float(np.sum(1.0 / np.asarray(self.rates)))

    @property
    def var(self):
        return float(np.sum(1.0 / np.asarray(self.rates) ** 2))


def eme_chain(k, rate_main, rate_last):
    """Chain with k stages at ``rate_main`` followed by one at ``rate_last``.

    When ``rate_last = rate_main / w`` the absorption time is distributed as
    EME(n=k, rate=rate_main, w).
    """
    k = _check_count(k, "k")
    return StageChain(rates=(_check_rate(rate_main),) * k + (_check_rate(rate_last),))


def simulate_absorption(chain, count, rng, label=None):
    """Absorption times: per draw, the sum of one exponential holding time per
    stage (inverse-CDF sampling; deterministic given the generator state)."""
    count = _check_count(count, "count")
    rates = np.asarray(chain.rates)
    times = (_std_exp(rng, (count, rates.size)) / rates).sum(axis=1)
    return Sample(times, label if label is not None else f"absorption{chain.rates}")


def ks_distance(data, dist):
    """sup_x |F_N(x) - F(x)| evaluated at the sample points, which is exact
    for an ECDF against a continuous reference."""
    x = np.sort(as_values(data))
    n = x.size
    cdf = dist.cdf(x)
    cdf = np.atleast_1d(cdf)
    grid = np.arange(1, n + 1) / n
    return float(np.max(np.maximum(grid - cdf, cdf - (grid - 1.0 / n))))


@dataclass(frozen=True)
class SimResult:
    """Comparison of simulated times against an analytic law."""

    times: Sample
    ks_distance: float
    reference: object

    @property
    def threshold(self):
        return KS_CRITICAL_1PCT / math.sqrt(len(self.times))

    @property
    def passed(self):
        return self.ks_distance < self.threshold


def validate_against(times, dist):
    """KS-compare absorption times with a distribution from this package."""
    if not hasattr(dist, "cdf"):
        raise ParameterError(f"reference must be a distribution, got {dist!r}")
    sample = times if isinstance(times, Sample) else Sample(as_values(times))
    return SimResult(times=sample, ks_distance=ks_distance(sample, dist), reference=dist)
