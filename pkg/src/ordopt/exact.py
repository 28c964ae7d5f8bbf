
"""
Exact success probability through the conditional-failure decomposition.

Condition on ``G = g``, the number of acceptable candidates among the ``n``
sampled.  Selection fails exactly when the ``m``-th smallest observation among
the ``n - g`` unacceptable candidates lies below the smallest observation among
the ``g`` acceptable ones, so

    p = 1 - (1 - alpha)^n - sum_{g=1}^{n-m} P(G = g) * p_fail(g),
    p_fail(g) = integral F_{m:n-g}(z) f_{1:g}(z) dz,

where ``F_{m:n-g}`` is the CDF of the ``m``-th order statistic of the
unacceptable parent and ``f_{1:g}`` is the density of the minimum of the
acceptable parent.  All terms share one adaptive mesh over ``z``.
"""

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy import special

from .gaussfn import log_binomial_weights, std_quantile
from .logger import logger
from .model import ProbabilityResult, ProblemSpec
from .orderstats import (
    TruncatedGaussian,
    TruncNoiseSum,
    first_orderstat_pdfs,
    orderstat_cdfs,
    tail_mass_bound,
    trunc_sum_cdf,
    trunc_sum_pdf,
)
from .quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    integrate_scalar,
    integrate_vector,
)
from .user_error import OutOfRange


SKIP_RELATIVE_WEIGHT = 1e-16
OUTER_TAIL_MASS = 1e-14


@dataclass(frozen=True)
class ExactResult:
    value: float
    error_estimate: float
    terms_evaluated: int

    def as_probability(self) -> ProbabilityResult:
        return ProbabilityResult(value=self.value, method="exact",
                                 error_estimate=self.error_estimate)


@dataclass(frozen=True)
class _Parents:
    acceptable: TruncNoiseSum
    unacceptable: TruncNoiseSum
    x_star: float

    @staticmethod
    def build(alpha: float, xi2: float) -> "_Parents":
        x_star = std_quantile(alpha)
        return _Parents(
            acceptable=TruncNoiseSum(TruncatedGaussian.acceptable(x_star, alpha), xi2),
            unacceptable=TruncNoiseSum(TruncatedGaussian.unacceptable(x_star, alpha), xi2),
            x_star=x_star,
        )

    @property
    def xi2(self) -> float:
        return self.acceptable.noise_xi2


def _outer_limits(parents: _Parents, alpha: float, g_max: int) -> Tuple[float, float]:
    """Interval outside which the minimum of ``g_max`` acceptable draws has
    mass below ``OUTER_TAIL_MASS``."""

    xi = math.sqrt(parents.xi2)
    scale = math.sqrt(1.0 + parents.xi2)
    lo = scale * std_quantile(alpha * OUTER_TAIL_MASS / g_max)
    hi = parents.x_star + xi * abs(std_quantile(OUTER_TAIL_MASS))
    return lo, hi


def _failure_integrand(parents: _Parents, n: int, m: int, gs: NDArray[np.float64],
                       cfg: QuadratureConfig) -> Callable[[float], NDArray[np.float64]]:
    mth = orderstat_cdfs(m, n - gs, lambda z: trunc_sum_cdf(parents.unacceptable, z, cfg))
    first = first_orderstat_pdfs(gs, lambda z: trunc_sum_pdf(parents.acceptable, z, cfg),
                                 lambda z: trunc_sum_cdf(parents.acceptable, z, cfg))

    def integrand(z: float) -> NDArray[np.float64]:
        miss = mth(z)
        if not np.any(miss > 0.0):
            return np.zeros(len(gs))
        return np.asarray(miss * first(z), dtype=np.float64)

    return integrand


def _truncation_error(parents: _Parents, n: int) -> float:
    """Bound on one failure term from the windowed convolutions and outer limits.

    Order-statistic CDFs move by at most ``count * delta`` when the parent CDF
    moves by ``delta``, and the two counts add up to ``n``.
    """

    delta = max(tail_mass_bound(parents.acceptable), tail_mass_bound(parents.unacceptable))
    return n * delta + OUTER_TAIL_MASS


def _check_counts(n: int, m: int, alpha: float, xi2: float) -> None:
    if n < 1:
        raise OutOfRange("n", n, "n >= 1")
    if not 1 <= m <= n:
        raise OutOfRange("m", m, "1 <= m <= n = %d" % n)
    if not 0.0 < alpha <= 1.0:
        raise OutOfRange("alpha", alpha, "0 < alpha <= 1")
    if not xi2 >= 0.0:
        raise OutOfRange("xi2", xi2, "xi2 >= 0")


def conditional_failure_probability(g: int, spec: ProblemSpec,
                                    cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Probability of missing every acceptable candidate given exactly ``g`` of them."""

    if not 1 <= g <= spec.n - spec.m:
        raise OutOfRange("g", g, "1 <= g <= n - m = %d" % (spec.n - spec.m))
    if spec.alpha == 1.0:
        return 0.0

    parents = _Parents.build(spec.alpha, spec.noise.xi2)
    if parents.xi2 == 0.0:
        return 0.0

    vector = _failure_integrand(parents, spec.n, spec.m,
                                np.array([float(g)]), cfg)
    lo, hi = _outer_limits(parents, spec.alpha, g)
    value, _ = integrate_scalar(lambda z: float(vector(z)[0]), lo, hi, cfg,
                                "conditional failure (g = %d)" % g,
                                points=[parents.x_star])
    return min(1.0, max(0.0, value))


def exact_success_probability_additive(n: int, m: int, alpha: float, xi2: float,
                                       cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                                       ) -> ExactResult:
    """Exact success probability for observations ``X + Y``, ``Var(Y) = xi2``."""

    _check_counts(n, m, alpha, xi2)
    if alpha == 1.0:
        return ExactResult(value=1.0, error_estimate=0.0, terms_evaluated=0)

    none_acceptable = math.exp(n * math.log1p(-alpha))
    if m == n:
        return ExactResult(value=1.0 - none_acceptable, error_estimate=0.0,
                           terms_evaluated=0)

    log_weights = log_binomial_weights(n, alpha)[1:n - m + 1]
    log_total = float(special.logsumexp(log_weights))
    keep = log_weights >= log_total + math.log(SKIP_RELATIVE_WEIGHT)
    skipped = float(np.sum(np.exp(log_weights[~keep])))

    gs = np.arange(1, n - m + 1, dtype=np.float64)[keep]
    weights = np.exp(log_weights[keep])
    logger.debug("Exact sum for n=%d, m=%d: %d of %d terms kept, skipped mass %r.",
                 n, m, len(gs), n - m, skipped)

    parents = _Parents.build(alpha, xi2)
    if parents.xi2 == 0.0:
        # Noiseless observations never rank an unacceptable candidate first.
        return ExactResult(value=1.0 - none_acceptable, error_estimate=skipped,
                           terms_evaluated=len(gs))

    lo, hi = _outer_limits(parents, alpha, int(gs[-1]))
    failures, error = integrate_vector(
        _failure_integrand(parents, n, m, gs, cfg), lo, hi, cfg,
        "conditional failure terms", points=[parents.x_star])
    failures = np.clip(failures, 0.0, 1.0)

    value = 1.0 - none_acceptable - float(np.dot(weights, failures))
    error_estimate = (float(np.sum(weights)) * (error + _truncation_error(parents, n))
                      + skipped)
    return ExactResult(value=min(1.0, max(0.0, value)),
                       error_estimate=error_estimate,
                       terms_evaluated=len(gs))


def exact_success_probability(spec: ProblemSpec,
                              cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> ExactResult:
    return exact_success_probability_additive(spec.n, spec.m, spec.alpha,
                                              spec.noise.xi2, cfg)
