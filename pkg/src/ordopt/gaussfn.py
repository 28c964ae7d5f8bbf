
"""
Scalar Gaussian primitives.

``std_cdf``/``std_quantile``/``std_pdf`` are thin wrappers over
:mod:`scipy.special`, which evaluates the tails through the complementary
error function, so ``Q(x)`` stays accurate far past ``x = 6``.  Anything that
is later raised to the power ``n`` goes through the ``log_*`` helpers.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .user_error import OutOfRange


LOG_LOG_2 = math.log(math.log(2.0))


def std_cdf(x: float) -> float:
    return float(special.ndtr(x))


def std_pdf(x: float) -> float:
    if math.isinf(x):
        return 0.0
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def std_quantile(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange("p", p, "0 <= p <= 1")
    return float(special.ndtri(p))


def q_function(x: float) -> float:
    return float(special.ndtr(-x))


def log_q_function(x: float) -> float:
    return float(special.log_ndtr(-x))


def log_neg_log_q(x: ArrayLike) -> NDArray[np.float64]:
    """``log(-log Q(x))`` without underflow for very negative ``x``.

    When ``Phi(x)`` is tiny, ``-log Q(x) = -log1p(-Phi(x)) ~ Phi(x)``, so the
    result is taken from ``log Phi(x)`` plus the first series correction.
    """

    arr = np.asarray(x, dtype=np.float64)
    log_phi = special.log_ndtr(arr)
    phi = np.exp(log_phi)
    small = phi < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.log(-special.log_ndtr(-arr))
    series = log_phi + 0.5 * phi
    return np.asarray(np.where(small, series, direct), dtype=np.float64)


@dataclass(frozen=True)
class QBoundConstants:
    theta: float
    c1: float
    c2: float

    @staticmethod
    def from_theta(theta: float) -> "QBoundConstants":
        if not 0.0 < theta < math.pi / 2:
            raise OutOfRange("theta", theta, "0 < theta < pi/2")
        c1 = 0.5 - theta / math.pi
        c2 = 1.0 / (math.tan(theta) * (math.pi - 2.0 * theta))
        return QBoundConstants(theta=theta, c1=c1, c2=c2)


def q_bounds(x: float, theta: float) -> Tuple[float, float]:
    """Sandwich ``c1 exp(-c2 x^2) <= Q(x) <= exp(-x^2/2) / 2`` for ``x >= 0``."""

    if not x >= 0.0:
        raise OutOfRange("x", x, "x >= 0")
    constants = QBoundConstants.from_theta(theta)
    lower = constants.c1 * math.exp(-constants.c2 * x * x)
    upper = 0.5 * math.exp(-0.5 * x * x)
    return lower, upper


def log_binomial_pmf(n: int, g: int, alpha: float) -> float:
    if not 0 <= g <= n:
        raise OutOfRange("g", g, "0 <= g <= n = %d" % n)
    if not 0.0 <= alpha <= 1.0:
        raise OutOfRange("alpha", alpha, "0 <= alpha <= 1")
    log_choose = (special.gammaln(n + 1) - special.gammaln(g + 1)
                  - special.gammaln(n - g + 1))
    # xlogy keeps 0 * log(0) = 0 at the endpoints alpha in {0, 1}.
    value = (log_choose + special.xlogy(g, alpha)
             + special.xlog1py(n - g, -alpha))
    return float(value)


def log_binomial_weights(n: int, alpha: float) -> NDArray[np.float64]:
    """Vector of ``log_binomial_pmf(n, g, alpha)`` for ``g = 0..n``."""

    g = np.arange(n + 1, dtype=np.float64)
    log_choose = (special.gammaln(n + 1) - special.gammaln(g + 1)
                  - special.gammaln(n - g + 1))
    return np.asarray(log_choose + special.xlogy(g, alpha)
                      + special.xlog1py(n - g, -alpha), dtype=np.float64)
