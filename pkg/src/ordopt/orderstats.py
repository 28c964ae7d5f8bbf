
"""
Order-statistic distributions and the truncated-plus-noise parents they are
applied to.

Two parents matter for the exact success probability: the acceptable
candidates ``Z_ = X_ + Y`` (``X`` truncated to the left of the threshold) and
the unacceptable ones ``Zbar = Xbar + Y`` (``X`` truncated to the right of it).
Both are :class:`TruncNoiseSum` instances; the order-statistic helpers take the
parent CDF/PDF as plain callables so the same code serves either.

Convolution integrals are cut at ``TAIL_SDS`` noise standard deviations around
the evaluation point, and the signal is cut ``SIGNAL_SPAN`` away from the
truncation point on its open side (or from zero, whichever is further out).
Beyond the first cut the noise CDF is 0 or 1 to within ``Q(TAIL_SDS)``, and the
part where it is 1 is added in closed form.  Densities are normalised by the
truncated mass in the log domain, so a cut far in the tail (tiny ``alpha``)
keeps full relative precision.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Literal, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .gaussfn import std_cdf
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate_scalar
from .user_error import OutOfRange


TAIL_SDS = 10.0
SIGNAL_SPAN = 12.0
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

Side = Literal["left_of", "right_of"]
RealFunction = Callable[[float], float]
VectorFunction = Callable[[float], NDArray[np.float64]]


def _log_mass(lo: float, hi: float) -> float:
    """``log(Phi(hi) - Phi(lo))`` without cancellation in either tail."""

    if not hi > lo:
        return -math.inf
    if hi <= 0.0:
        big, small = float(special.log_ndtr(hi)), float(special.log_ndtr(lo))
    else:
        big, small = float(special.log_ndtr(-lo)), float(special.log_ndtr(-hi))
    if small == -math.inf:
        return big
    return big + math.log1p(-math.exp(small - big))


@dataclass(frozen=True)
class TruncatedGaussian:
    """Standard normal restricted to one side of ``cut``.

    ``left_of`` keeps ``x <= cut`` (mass ``alpha``), ``right_of`` keeps
    ``x >= cut`` (mass ``1 - alpha``).
    """

    side: Side
    cut: float
    total_mass: float

    def __post_init__(self) -> None:
        if not 0.0 < self.total_mass <= 1.0:
            raise OutOfRange("total_mass", self.total_mass, "0 < total_mass <= 1")

    @staticmethod
    def acceptable(cut: float, alpha: float) -> "TruncatedGaussian":
        return TruncatedGaussian(side="left_of", cut=cut, total_mass=alpha)

    @staticmethod
    def unacceptable(cut: float, alpha: float) -> "TruncatedGaussian":
        return TruncatedGaussian(side="right_of", cut=cut, total_mass=1.0 - alpha)

    @property
    def lower(self) -> float:
        return -math.inf if self.side == "left_of" else self.cut

    @property
    def upper(self) -> float:
        return self.cut if self.side == "left_of" else math.inf

    @property
    def signal_window(self) -> Tuple[float, float]:
        """Finite interval holding all but ``2 Q(SIGNAL_SPAN)`` of the relative mass."""

        if self.side == "left_of":
            return min(self.cut, 0.0) - SIGNAL_SPAN, self.cut
        return self.cut, max(self.cut, 0.0) + SIGNAL_SPAN

    def log_pdf(self, x: float) -> float:
        if not self.lower <= x <= self.upper or math.isinf(x):
            return -math.inf
        return -0.5 * x * x - LOG_SQRT_2PI - math.log(self.total_mass)

    def pdf(self, x: float) -> float:
        return math.exp(self.log_pdf(x))

    def mass_between(self, lo: float, hi: float) -> float:
        """Probability of ``[lo, hi]`` under the truncated distribution."""

        lo, hi = max(lo, self.lower), min(hi, self.upper)
        log_value = _log_mass(lo, hi) - math.log(self.total_mass)
        return min(1.0, math.exp(log_value))

    def cdf(self, x: float) -> float:
        if x <= self.lower:
            return 0.0
        if x >= self.upper:
            return 1.0
        return self.mass_between(self.lower, x)


@dataclass(frozen=True)
class TruncNoiseSum:
    base: TruncatedGaussian
    noise_xi2: float

    def __post_init__(self) -> None:
        if not self.noise_xi2 >= 0.0:
            raise OutOfRange("noise_xi2", self.noise_xi2, "noise_xi2 >= 0")

    @property
    def noise_sd(self) -> float:
        return math.sqrt(self.noise_xi2)


def _window(base: TruncatedGaussian, z: float, sd: float) -> Tuple[float, float]:
    signal_lo, signal_hi = base.signal_window
    return max(signal_lo, z - TAIL_SDS * sd), min(signal_hi, z + TAIL_SDS * sd)


def trunc_sum_cdf(d: TruncNoiseSum, z: float,
                  cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``P(Xtrunc + Y <= z)`` for ``Y ~ N(0, noise_xi2)``."""

    base = d.base
    if d.noise_xi2 == 0.0:
        return base.cdf(z)

    sd = d.noise_sd
    # Where x <= z - TAIL_SDS * sd the noise CDF is 1: integrate in closed form.
    certain = base.mass_between(base.lower, z - TAIL_SDS * sd)

    lo, hi = _window(base, z, sd)

    def integrand(x: float) -> float:
        return float(special.ndtr((z - x) / sd)) * base.pdf(x)

    partial, _ = integrate_scalar(integrand, lo, hi, cfg, "truncated-sum CDF",
                                  points=[z, 0.0, base.cut])
    return min(1.0, max(0.0, certain + partial))


def trunc_sum_pdf(d: TruncNoiseSum, z: float,
                  cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    base = d.base
    if d.noise_xi2 == 0.0:
        return base.pdf(z)

    sd = d.noise_sd
    lo, hi = _window(base, z, sd)
    log_sd = math.log(sd)

    def integrand(x: float) -> float:
        u = (z - x) / sd
        return math.exp(-0.5 * u * u - LOG_SQRT_2PI - log_sd + base.log_pdf(x))

    value, _ = integrate_scalar(integrand, lo, hi, cfg, "truncated-sum PDF",
                                points=[z, 0.0, base.cut])
    return max(0.0, value)


def tail_mass_bound(d: TruncNoiseSum) -> float:
    """Upper bound on the relative probability mass dropped by the window cuts."""

    if d.noise_xi2 == 0.0:
        return 0.0
    return 2.0 * (std_cdf(-TAIL_SDS) + std_cdf(-SIGNAL_SPAN))


def _check_rank(rank: int, n: int) -> None:
    if n < 1:
        raise OutOfRange("n", n, "n >= 1")
    if not 1 <= rank <= n:
        raise OutOfRange("rank", rank, "1 <= rank <= n = %d" % n)


def _clipped(parent_cdf: RealFunction, x: float) -> float:
    return min(1.0, max(0.0, parent_cdf(x)))


def orderstat_cdfs(rank: int, ns: ArrayLike, parent_cdf: RealFunction) -> VectorFunction:
    """CDFs of the ``rank``-th smallest of ``n`` i.i.d. draws, for every ``n`` in ``ns``.

    ``P(X_(r:n) <= x) = sum_{i >= r} C(n, i) F^i (1 - F)^(n - i)``, evaluated as
    the regularised incomplete beta ``I_F(r, n - r + 1)``.  The parent CDF is
    called once per point whatever the number of sample sizes.
    """

    counts = np.asarray(ns, dtype=np.float64).reshape(-1)
    for n in counts:
        _check_rank(rank, int(n))

    def cdf(x: float) -> NDArray[np.float64]:
        p = _clipped(parent_cdf, x)
        return np.asarray(special.betainc(rank, counts - rank + 1, p), dtype=np.float64)

    return cdf


def orderstat_cdf(rank: int, n: int, parent_cdf: RealFunction) -> RealFunction:
    """CDF of the ``rank``-th smallest of ``n`` i.i.d. draws."""

    vector = orderstat_cdfs(rank, [n], parent_cdf)
    return lambda x: float(vector(x)[0])


def first_orderstat_pdfs(ns: ArrayLike, parent_pdf: RealFunction,
                         parent_cdf: RealFunction) -> VectorFunction:
    """Densities ``n (1 - F)^(n - 1) f`` of the minimum, for every ``n`` in ``ns``."""

    counts = np.asarray(ns, dtype=np.float64).reshape(-1)
    for n in counts:
        _check_rank(1, int(n))

    def pdf(x: float) -> NDArray[np.float64]:
        density = parent_pdf(x)
        if density == 0.0:
            return np.zeros(len(counts))
        survival = 1.0 - _clipped(parent_cdf, x)
        return np.asarray(counts * np.power(survival, counts - 1.0) * density,
                          dtype=np.float64)

    return pdf


def first_orderstat_pdf(n: int, parent_pdf: RealFunction,
                        parent_cdf: RealFunction) -> RealFunction:
    vector = first_orderstat_pdfs([n], parent_pdf, parent_cdf)
    return lambda x: float(vector(x)[0])


def rectify_points(points: Sequence[float]) -> List[float]:
    """Backward running minimum: ``x*_k = x_k``, ``x*_i = min(x_i, x*_{i+1})``."""

    ret = list(points)
    for i in range(len(ret) - 2, -1, -1):
        ret[i] = min(ret[i], ret[i + 1])
    return ret


def _rank_paths(ranks: Sequence[int], n: int) -> List[Tuple[int, ...]]:
    """All ``(i_1, ..., i_k)`` with ``ranks[j] <= i_j <= i_{j+1}`` and ``i_k <= n``."""

    paths: List[Tuple[int, ...]] = [()]
    for j in range(len(ranks) - 1, -1, -1):
        extended: List[Tuple[int, ...]] = []
        for path in paths:
            ceiling = path[0] if path else n
            for i in range(ranks[j], ceiling + 1):
                extended.append((i,) + path)
        paths = extended
    return paths


def joint_orderstat_cdf(ranks: Sequence[int], points: Sequence[float],
                        parent_cdf: RealFunction, n: int) -> float:
    """Joint CDF ``P(X_(n1) <= x1, ..., X_(nk) <= xk)`` of order statistics."""

    k = len(ranks)
    if not 1 <= k <= 4:
        raise OutOfRange("ranks", list(ranks), "between 1 and 4 ranks")
    if len(points) != k:
        raise OutOfRange("points", list(points), "one point per rank")
    if any(ranks[i + 1] <= ranks[i] for i in range(k - 1)):
        raise OutOfRange("ranks", list(ranks), "strictly ascending ranks")
    if ranks[0] < 1 or ranks[-1] > n:
        raise OutOfRange("ranks", list(ranks), "ranks within 1..n = %d" % n)

    xs = rectify_points(points)
    cdfs = np.array([min(1.0, max(0.0, parent_cdf(x))) for x in xs])
    cdfs = np.maximum.accumulate(cdfs)
    increments = np.diff(np.concatenate(([0.0], cdfs, [1.0])))

    paths = np.array(_rank_paths(ranks, n), dtype=np.float64)
    counts = np.diff(np.concatenate((np.zeros((len(paths), 1)), paths,
                                     np.full((len(paths), 1), float(n))), axis=1), axis=1)
    log_terms = (special.gammaln(n + 1) - special.gammaln(counts + 1).sum(axis=1)
                 + special.xlogy(counts, increments).sum(axis=1))
    value = float(np.exp(special.logsumexp(log_terms)))
    return min(1.0, max(0.0, value))
