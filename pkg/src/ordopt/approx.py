
"""
Gaussian-surrogate approximation of the success probability.

By symmetry the problem is phrased on the top ``m`` order statistics of the
observations.  Their joint law is replaced by a Gaussian with the asymptotic
mean and covariance of central order statistics; conditioning the true values
on the observations and integrating the observations out keeps everything
Gaussian, and the answer is one multivariate normal CDF.
"""

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from numpy.typing import NDArray

from .gaussfn import std_pdf, std_quantile
from .logger import logger
from .model import ProbabilityResult, ProblemSpec, copula_to_noise
from .mvncdf import MvnProblem, mvn_cdf
from .user_error import Degenerate, OutOfRange


SurrogateKind = Literal["top_orderstats", "conditioned_X"]
CovarianceReading = Literal["standard", "noise_scaled"]


@dataclass(frozen=True)
class ApproxConfig:
    target_abs_error: float = 1e-4
    covariance_reading: CovarianceReading = "standard"

    def __post_init__(self) -> None:
        if not self.target_abs_error > 0.0:
            raise OutOfRange("target_abs_error", self.target_abs_error, "> 0")


DEFAULT_APPROX = ApproxConfig()


@dataclass(frozen=True)
class GaussianSurrogate:
    mean: NDArray[np.float64]
    cov: NDArray[np.float64]
    n: int
    kind: SurrogateKind

    @property
    def m(self) -> int:
        return len(self.mean)


def surrogate_top_orderstats(n: int, m: int,
                             noise_xi2: Optional[float] = None) -> GaussianSurrogate:
    """Asymptotic Gaussian for the top ``m`` of ``n`` standard normal draws.

    With ``p_i = (n - m + i - 1)/n`` the mean is ``Phi^-1(p_i)`` and
    ``C_ij = p_i (1 - p_j) / (n phi(Phi^-1(p_i)) phi(Phi^-1(p_j)))`` for
    ``i <= j``.  Passing ``noise_xi2`` evaluates the first density factor for
    a parent of variance ``1 + noise_xi2`` instead of the standard one.
    """

    if n < 2 or not 1 <= m < n:
        if m == n:
            raise Degenerate("the order-statistic surrogate needs m < n")
        raise OutOfRange("m", m, "1 <= m < n = %d" % n)

    p = (n - m + np.arange(m, dtype=np.float64)) / n
    quantiles = np.array([std_quantile(float(v)) for v in p])
    density = np.array([std_pdf(float(v)) for v in quantiles])

    first_density = density
    if noise_xi2 is not None:
        # phi_s(Phi_s^-1(p)) = phi(Phi^-1(p)) / s for a N(0, s^2) parent.
        first_density = density / math.sqrt(1.0 + noise_xi2)

    i, j = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    lo, hi = np.minimum(i, j), np.maximum(i, j)
    cov = p[lo] * (1.0 - p[hi]) / (n * first_density[lo] * density[hi])
    cov = 0.5 * (cov + cov.T)

    return GaussianSurrogate(mean=quantiles, cov=cov, n=n, kind="top_orderstats")


def condition_and_marginalize(surr: GaussianSurrogate, rho: float) -> GaussianSurrogate:
    """``X | Z = z ~ N(rho z, (1 - rho^2) I)`` with ``Z`` integrated out."""

    if surr.kind != "top_orderstats":
        raise OutOfRange("kind", surr.kind, "a top_orderstats surrogate")
    if not 0.0 < rho <= 1.0:
        raise OutOfRange("rho", rho, "0 < rho <= 1")

    mean = rho * surr.mean
    cov = rho * rho * surr.cov + (1.0 - rho * rho) * np.eye(surr.m)
    return GaussianSurrogate(mean=mean, cov=cov, n=surr.n, kind="conditioned_X")


def approx_success_probability(spec: ProblemSpec, seed: int = 0,
                               cfg: ApproxConfig = DEFAULT_APPROX) -> ProbabilityResult:
    if spec.alpha == 1.0:
        return ProbabilityResult(value=1.0, method="approx", error_estimate=0.0, seed=seed)
    if spec.m == spec.n:
        raise Degenerate("the approximation needs m < n; use the exact or bound methods")

    noise_xi2 = None
    if cfg.covariance_reading == "noise_scaled":
        noise_xi2 = copula_to_noise(spec.rho)

    surrogate = surrogate_top_orderstats(spec.n, spec.m, noise_xi2=noise_xi2)
    conditioned = condition_and_marginalize(surrogate, spec.rho)

    threshold = std_quantile(1.0 - spec.alpha)
    problem = MvnProblem.build(conditioned.mean, conditioned.cov,
                               np.full(spec.m, threshold))
    result = mvn_cdf(problem, target_abs_error=cfg.target_abs_error, seed=seed)
    logger.debug("Approximation for %r: MVN CDF %r with %d points.",
                 spec, result.value, result.points_used)

    value = min(1.0, max(0.0, 1.0 - result.value))
    return ProbabilityResult(value=value, method="approx",
                             error_estimate=result.error_estimate, seed=seed)
