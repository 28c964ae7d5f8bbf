
"""
Problem definitions for ordinal optimisation under the Gaussian copula model.

A problem is the tuple ``(n, m, alpha, rho)``: ``n`` candidates are sampled,
the ``m`` with the smallest noisy observations are selected, and the selection
succeeds if at least one of them has a true value within the best
``100 * alpha`` percent.  Under the copula model this is equivalent to an
additive model ``Z = X + Y`` with standard ``X`` and independent Gaussian noise
``Y`` of variance ``xi2 = 1/rho**2 - 1``; :class:`AdditiveNoiseView` carries
that translation.
"""

import math
from dataclasses import dataclass
from typing import Literal, Optional

from .gaussfn import std_quantile
from .user_error import OutOfRange


Method = Literal[
    "exact",
    "approx",
    "dist_free_lower",
    "dist_free_upper",
    "fixed_theta",
    "optimised",
    "simulate",
]


@dataclass(frozen=True)
class ProblemSpec:
    n: int
    m: int
    alpha: float
    rho: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise OutOfRange("n", self.n, "n >= 1")
        if not 1 <= self.m <= self.n:
            raise OutOfRange("m", self.m, "1 <= m <= n = %d" % self.n)
        if not 0.0 < self.alpha <= 1.0:
            raise OutOfRange("alpha", self.alpha, "0 < alpha <= 1")
        if not 0.0 < self.rho <= 1.0:
            raise OutOfRange("rho", self.rho, "0 < rho <= 1")

    @property
    def noise(self) -> "AdditiveNoiseView":
        return AdditiveNoiseView.from_spec(self)


@dataclass(frozen=True)
class AdditiveNoiseView:
    xi2: float
    x_star: float

    @staticmethod
    def from_spec(spec: ProblemSpec) -> "AdditiveNoiseView":
        return AdditiveNoiseView(xi2=copula_to_noise(spec.rho),
                                 x_star=std_quantile(spec.alpha))

    @property
    def xi(self) -> float:
        return math.sqrt(self.xi2)


@dataclass(frozen=True)
class ProbabilityResult:
    value: float
    method: Method
    error_estimate: Optional[float] = None
    seed: Optional[int] = None


def make_problem(n: int, m: int, alpha: float, rho: float) -> ProblemSpec:
    return ProblemSpec(n=n, m=m, alpha=alpha, rho=rho)


def copula_to_noise(rho: float) -> float:
    if not 0.0 < rho <= 1.0:
        raise OutOfRange("rho", rho, "0 < rho <= 1")
    if rho == 1.0:
        return 0.0
    return 1.0 / (rho * rho) - 1.0


def noise_to_copula(xi2: float) -> float:
    if not xi2 >= 0.0:
        raise OutOfRange("xi2", xi2, "xi2 >= 0")
    return 1.0 / math.sqrt(1.0 + xi2)
