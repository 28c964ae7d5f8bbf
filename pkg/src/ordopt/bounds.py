
"""
Lower and upper bounds on the success probability.

Besides the distribution-free bounds, the single-selection minimum of the
observations is dominated by a scalar Gaussian whose mean and variance follow
from a Q-function sandwich parametrised by an angle ``theta``.  Whether the
domination holds for a given ``n`` is confirmed numerically; everything is
written in terms of ``log n`` so that sample sizes far beyond machine integers
remain testable.
"""

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy import optimize, special

from .gaussfn import LOG_LOG_2, QBoundConstants, log_neg_log_q, std_cdf, std_quantile
from .logger import logger
from .model import ProbabilityResult
from .user_error import Degenerate, OutOfRange


GRID_POINTS = 10_001
GRID_MARGIN = 1e-12

THETA_MIN = 0.01
THETA_MAX = math.pi / 2 - 0.01
UNIFORM_SCAN = 64
NEAR_RIGHT_ANGLE_SCAN = 32
THETA_XATOL = 1e-6

BoundMethod = Literal["dist_free_lower", "dist_free_upper", "fixed_theta", "optimised"]


@dataclass(frozen=True)
class BoundResult:
    value: float
    theta_used: Optional[float]
    feasible: bool
    method: BoundMethod

    def as_probability(self) -> ProbabilityResult:
        return ProbabilityResult(value=self.value, method=self.method)


@dataclass(frozen=True)
class DominatingSurrogate:
    theta: float
    constants: QBoundConstants
    mu_n: float
    sigma2_n: float
    log_n: float

    @property
    def sigma_n(self) -> float:
        return math.sqrt(self.sigma2_n)


def _check_alpha_rho(alpha: float, rho: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise OutOfRange("alpha", alpha, "0 < alpha <= 1")
    if not 0.0 < rho <= 1.0:
        raise OutOfRange("rho", rho, "0 < rho <= 1")


def _log_count(n: int) -> float:
    if n < 1:
        raise OutOfRange("n", n, "n >= 1")
    return math.log(n)


def dist_free_bounds(n: int, m: int, alpha: float) -> Tuple[float, float]:
    """Blind-pick lower bound and the all-selected upper bound."""

    if n < 1:
        raise OutOfRange("n", n, "n >= 1")
    if not 1 <= m <= n:
        raise OutOfRange("m", m, "1 <= m <= n = %d" % n)
    if not 0.0 <= alpha <= 1.0:
        raise OutOfRange("alpha", alpha, "0 <= alpha <= 1")
    if alpha == 1.0:
        return 1.0, 1.0

    log_miss = math.log1p(-alpha)
    return -math.expm1(m * log_miss), -math.expm1(n * log_miss)


def conditional_blind_pick_bound(n: int, m: int, g: int) -> float:
    """``1 - C(n - g, m) / C(n, m)``: chance a uniform pick of ``m`` hits one of ``g``."""

    if n < 1:
        raise OutOfRange("n", n, "n >= 1")
    if not 1 <= m <= n:
        raise OutOfRange("m", m, "1 <= m <= n = %d" % n)
    if not 0 <= g <= n:
        raise OutOfRange("g", g, "0 <= g <= n = %d" % n)
    if g == 0:
        return 0.0
    if g > n - m:
        return 1.0

    log_ratio = (special.gammaln(n - g + 1) - special.gammaln(n - g - m + 1)
                 - special.gammaln(n + 1) + special.gammaln(n - m + 1))
    return float(-np.expm1(log_ratio))


def dominating_surrogate(log_n: float, theta: float) -> DominatingSurrogate:
    constants = QBoundConstants.from_theta(theta)
    log_nc1 = log_n + math.log(constants.c1)
    if not log_nc1 > 0.0:
        raise Degenerate("the dominating surrogate needs n * c1 > 1 (log n = %r, theta = %r)"
                         % (log_n, theta))

    mu = -math.sqrt(log_nc1 / constants.c2)
    sigma2 = -LOG_LOG_2 / (2.0 * constants.c2 * (log_nc1 - LOG_LOG_2))
    return DominatingSurrogate(theta=theta, constants=constants, mu_n=mu,
                               sigma2_n=sigma2, log_n=log_n)


def _middle_interval_holds(surr: DominatingSurrogate) -> bool:
    """``n log Q(z) <= log Q((z - mu)/sigma)`` on a grid over ``[mu, 0]``."""

    z = np.linspace(surr.mu_n, 0.0, GRID_POINTS)
    lhs = surr.log_n + log_neg_log_q(z)
    rhs = log_neg_log_q((z - surr.mu_n) / surr.sigma_n)
    return bool(np.all(lhs >= rhs - GRID_MARGIN))


def _right_interval_holds(surr: DominatingSurrogate) -> bool:
    """Non-positive discriminant of the quadratic bounding ``[0, inf)``."""

    c1, c2 = surr.constants.c1, surr.constants.c2
    mu, sigma2 = surr.mu_n, surr.sigma2_n

    # log(n/2 - c2/sigma2), failing when the leading coefficient is not positive.
    shrink = 2.0 * c2 / sigma2 * math.exp(-surr.log_n)
    if shrink >= 1.0:
        return False
    log_a = surr.log_n - math.log(2.0) + math.log1p(-shrink)

    log_b = float(np.logaddexp(surr.log_n + math.log(math.log(2.0)),
                               math.log(mu * mu / sigma2 - math.log(c1))))
    log_rhs = 2.0 * math.log(c2) + 2.0 * math.log(-mu) - 2.0 * math.log(sigma2)
    return log_a + log_b >= log_rhs


def numerical_test_log(log_n: float, theta: float) -> bool:
    constants = QBoundConstants.from_theta(theta)
    if log_n + math.log(constants.c1) <= 0.0:
        return False

    surr = dominating_surrogate(log_n, theta)
    if not _middle_interval_holds(surr):
        return False
    return _right_interval_holds(surr)


def numerical_test(n: int, theta: float) -> bool:
    """Sufficient check that ``n`` is past the domination threshold at ``theta``."""

    return numerical_test_log(_log_count(n), theta)


def surrogate_bound(surr: DominatingSurrogate, alpha: float, rho: float) -> float:
    x_star = std_quantile(alpha)
    scale = math.sqrt(1.0 - rho * rho + rho * rho * surr.sigma2_n)
    return std_cdf((x_star - rho * surr.mu_n) / scale)


def lower_bound_log(log_n: float, alpha: float, rho: float, theta: float) -> BoundResult:
    _check_alpha_rho(alpha, rho)
    if not numerical_test_log(log_n, theta):
        return BoundResult(value=0.0, theta_used=theta, feasible=False,
                           method="fixed_theta")
    value = surrogate_bound(dominating_surrogate(log_n, theta), alpha, rho)
    return BoundResult(value=value, theta_used=theta, feasible=True, method="fixed_theta")


def lower_bound(n: int, alpha: float, rho: float, theta: float) -> BoundResult:
    return lower_bound_log(_log_count(n), alpha, rho, theta)


def theta_scan() -> NDArray[np.float64]:
    """Coarse angles: uniform over the interior plus a log-spaced run towards
    ``pi/2``, where the optimum sits for very large sample sizes."""

    uniform = np.linspace(THETA_MIN, THETA_MAX, UNIFORM_SCAN)
    near = math.pi / 2 - np.geomspace(1e-2, 1e-8, NEAR_RIGHT_ANGLE_SCAN)
    return np.unique(np.concatenate((uniform, near)))


def optimise_theta(objective: Callable[[float], float]) -> Tuple[float, float]:
    """Minimise ``objective`` over the angle: scan, then a bounded Brent search
    between the neighbours of the best scan point."""

    thetas = theta_scan()
    values = np.array([objective(float(t)) for t in thetas])
    best = int(np.argmin(values))
    best_theta, best_value = float(thetas[best]), float(values[best])

    lo = float(thetas[max(best - 1, 0)])
    hi = float(thetas[min(best + 1, len(thetas) - 1)])
    if hi > lo:
        refined = optimize.minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                                           options={"xatol": THETA_XATOL})
        if float(refined.fun) < best_value:
            best_theta, best_value = float(refined.x), float(refined.fun)

    logger.debug("Angle search: theta = %r, objective = %r.", best_theta, best_value)
    return best_theta, best_value


def optimised_lower_bound_log(log_n: float, alpha: float, rho: float) -> BoundResult:
    _check_alpha_rho(alpha, rho)

    def negated(theta: float) -> float:
        return -lower_bound_log(log_n, alpha, rho, theta).value

    theta, value = optimise_theta(negated)
    if not -value > 0.0:
        return BoundResult(value=0.0, theta_used=None, feasible=False, method="optimised")
    return BoundResult(value=-value, theta_used=theta, feasible=True, method="optimised")


def optimised_lower_bound(n: int, alpha: float, rho: float) -> BoundResult:
    return optimised_lower_bound_log(_log_count(n), alpha, rho)


def empirical_threshold(theta: float, n_max: int = 10_000) -> Optional[int]:
    """Smallest ``n <= n_max`` passing :func:`numerical_test`, if any.

    Counts below ``1/c1`` fail by construction and are not visited.
    """

    constants = QBoundConstants.from_theta(theta)
    start = max(1, int(math.floor(1.0 / constants.c1)))
    for n in range(start, n_max + 1):
        if numerical_test(n, theta):
            return n
    return None
