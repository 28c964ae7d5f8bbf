
"""
Sample-size planning: the smallest certified ``n`` for which the angle-based
lower bound guarantees a success probability of at least ``1 - delta``.

Setting the bound equal to ``1 - delta`` and squaring gives a quartic in
``u = sqrt(log(n c1))``; its greatest real root yields ``n(theta)``, which is
then minimised over the angle.  Sample sizes are carried as ``log n`` because
weak correlations need counts with tens of thousands of decimal digits.
"""

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from .bounds import (
    dominating_surrogate,
    lower_bound,
    numerical_test,
    numerical_test_log,
    optimise_theta,
    surrogate_bound,
)
from .gaussfn import LOG_LOG_2, QBoundConstants, std_quantile
from .logger import logger
from .user_error import Infeasible, NoRealRoot, NumericalError, OutOfRange


IMAG_TOL = 1e-9
CERTIFY_SLACK = 1e-9
MAX_EXACT_LOG_N = 62 * math.log(2.0)
UNCERTIFIED_PENALTY = 1e9

TABLE1_ALPHA = 0.01
TABLE1_RHOS = (0.01, 0.3, 0.6, 0.9, 0.99)
TABLE1_DELTAS = (0.01, 0.05, 0.1)


@dataclass(frozen=True)
class QuarticCoefficients:
    a4: float
    a3: float
    a2: float
    a1: float
    a0: float

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.a4, self.a3, self.a2, self.a1, self.a0])


@dataclass(frozen=True)
class PlanResult:
    log_n: float
    n_exact: Optional[int]
    theta_used: float
    certified: bool

    @property
    def log10_n(self) -> float:
        return self.log_n / math.log(10.0)

    def rendered(self) -> str:
        if self.n_exact is not None:
            return str(self.n_exact)
        return render_log10(self.log10_n)


def render_log10(log10_n: float, digits: int = 4) -> str:
    """Decimal rendering ``8.144e47007`` of ``10 ** log10_n``."""

    exponent = math.floor(log10_n)
    mantissa = round(10.0 ** (log10_n - exponent), digits - 1)
    if mantissa >= 10.0:
        mantissa /= 10.0
        exponent += 1
    return "%.*fe%d" % (digits - 1, mantissa, exponent)


def _check_plan_inputs(alpha: float, rho: float, delta: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise OutOfRange("alpha", alpha, "0 < alpha < 1")
    if not 0.0 < rho <= 1.0:
        raise OutOfRange("rho", rho, "0 < rho <= 1")
    if not 0.0 < delta < 1.0:
        raise OutOfRange("delta", delta, "0 < delta < 1")


def quartic_coefficients(alpha: float, rho: float, delta: float,
                         theta: float) -> QuarticCoefficients:
    _check_plan_inputs(alpha, rho, delta)
    c2 = QBoundConstants.from_theta(theta).c2

    a = std_quantile(alpha)
    d = std_quantile(1.0 - delta)
    rho2 = rho * rho
    shared = a * a - d * d + rho2 * d * d

    return QuarticCoefficients(
        a4=-2.0 * rho2 / LOG_LOG_2,
        a3=-4.0 * a * rho * math.sqrt(c2) / LOG_LOG_2,
        a2=2.0 * rho2 - 2.0 * c2 * shared / LOG_LOG_2,
        a1=4.0 * math.sqrt(c2) * a * rho,
        a0=2.0 * c2 * shared - rho2 * d * d,
    )


def greatest_real_root(c: QuarticCoefficients) -> float:
    """Greatest real ``u >= 0`` with ``a4 u^4 + ... + a0 = 0``."""

    coefficients = c.as_array()
    if not np.any(coefficients != 0.0):
        raise OutOfRange("coefficients", list(coefficients), "not all zero")

    polynomial = np.polynomial.Polynomial(coefficients[::-1])
    derivative = polynomial.deriv()

    candidates: List[float] = []
    for root in np.roots(coefficients):
        # Relative tolerance: u reaches several hundred for weak correlations.
        if abs(root.imag) > IMAG_TOL * max(1.0, abs(root.real)):
            continue
        u = float(root.real)
        slope = float(derivative(u))
        if slope != 0.0:
            u -= float(polynomial(u)) / slope
        if u >= 0.0:
            candidates.append(u)

    if not candidates:
        raise NoRealRoot(list(coefficients))
    return max(candidates)


def _log_n_at(alpha: float, rho: float, delta: float, theta: float) -> float:
    u = greatest_real_root(quartic_coefficients(alpha, rho, delta, theta))
    return u * u - math.log(QBoundConstants.from_theta(theta).c1)


def _certify_log(log_n: float, alpha: float, rho: float, delta: float,
                 theta: float) -> bool:
    if not numerical_test_log(log_n, theta):
        return False
    bound = surrogate_bound(dominating_surrogate(log_n, theta), alpha, rho)
    return bound >= 1.0 - delta - CERTIFY_SLACK


def _materialise(log_n: float) -> Optional[int]:
    if log_n > MAX_EXACT_LOG_N:
        return None
    return int(math.ceil(math.exp(log_n)))


def plan_sample_size(alpha: float, rho: float, delta: float) -> PlanResult:
    _check_plan_inputs(alpha, rho, delta)

    def objective(theta: float) -> float:
        try:
            log_n = _log_n_at(alpha, rho, delta, theta)
        except NumericalError:
            return UNCERTIFIED_PENALTY
        if not _certify_log(log_n, alpha, rho, delta, theta):
            return UNCERTIFIED_PENALTY
        return log_n

    theta, log_n = optimise_theta(objective)
    if log_n >= UNCERTIFIED_PENALTY:
        raise Infeasible("no angle certifies a sample size for alpha = %r, rho = %r, delta = %r"
                         % (alpha, rho, delta))

    n_exact = _materialise(log_n)
    if n_exact is not None:
        certified = (numerical_test(n_exact, theta)
                     and lower_bound(n_exact, alpha, rho, theta).value
                     >= 1.0 - delta - CERTIFY_SLACK)
    else:
        certified = _certify_log(log_n, alpha, rho, delta, theta)

    logger.info("Planned n for alpha=%r, rho=%r, delta=%r: log n = %r at theta = %r.",
                alpha, rho, delta, log_n, theta)
    return PlanResult(log_n=log_n, n_exact=n_exact, theta_used=theta, certified=certified)


def table1() -> Iterator[Tuple[float, float, PlanResult]]:
    """Planned sizes over the standard grid of correlations and risk levels."""

    for rho in TABLE1_RHOS:
        for delta in TABLE1_DELTAS:
            yield rho, delta, plan_sample_size(TABLE1_ALPHA, rho, delta)
