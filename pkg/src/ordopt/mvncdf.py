
"""
Multivariate normal CDF ``P(X <= upper)`` for ``X ~ N(mean, cov)``.

The integral is reduced by a pivoted Cholesky factorisation to a product of
one-dimensional conditional probabilities over the unit cube (separation of
variables), which is then averaged over a randomly shifted Richtmyer lattice.
Each shift gives an independent unbiased estimate; the spread across shifts
supplies the error estimate.  The lattice size doubles until the requested
accuracy or ``MAX_POINTS`` is reached.

Variables are ordered greedily so that the most restrictive limit is
integrated first.  A pivot whose conditional variance falls below
``PIVOT_TOL`` marks a direction that is fully determined by the earlier ones;
it contributes an indicator instead of a conditional probability.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .gaussfn import std_cdf
from .logger import logger
from .user_error import DimensionMismatch, NotPSD, OutOfRange


PIVOT_TOL = 1e-10
SYMMETRY_TOL = 1e-12
MAX_DIM = 64
SHIFTS = 12
INITIAL_POINTS = 1 << 9
MAX_POINTS = 1 << 22
CHUNK = 1 << 14

_PRIMES = np.array([
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
    157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233,
    239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311,
], dtype=np.float64)


@dataclass(frozen=True)
class MvnProblem:
    mean: Tuple[float, ...]
    cov: Tuple[Tuple[float, ...], ...]
    upper: Tuple[float, ...]

    def __post_init__(self) -> None:
        m = len(self.mean)
        if len(self.upper) != m:
            raise DimensionMismatch("upper limits", m, len(self.upper))
        if len(self.cov) != m:
            raise DimensionMismatch("covariance rows", m, len(self.cov))
        for row in self.cov:
            if len(row) != m:
                raise DimensionMismatch("covariance columns", m, len(row))
        cov = np.array(self.cov, dtype=np.float64).reshape(m, m)
        if m and not np.all(np.diag(cov) > 0.0):
            raise OutOfRange("cov", "diagonal", "strictly positive diagonal")
        if not np.allclose(cov, cov.T, rtol=0.0, atol=SYMMETRY_TOL):
            raise OutOfRange("cov", "asymmetric", "symmetric within %g" % SYMMETRY_TOL)

    @staticmethod
    def build(mean: ArrayLike, cov: ArrayLike, upper: ArrayLike) -> "MvnProblem":
        mean_arr = np.atleast_1d(np.asarray(mean, dtype=np.float64))
        cov_arr = np.atleast_2d(np.asarray(cov, dtype=np.float64))
        upper_arr = np.atleast_1d(np.asarray(upper, dtype=np.float64))
        return MvnProblem(
            mean=tuple(float(v) for v in mean_arr),
            cov=tuple(tuple(float(v) for v in row) for row in cov_arr),
            upper=tuple(float(v) for v in upper_arr),
        )

    @property
    def dim(self) -> int:
        return len(self.mean)


@dataclass(frozen=True)
class MvnResult:
    value: float
    error_estimate: float
    points_used: int


def _pivoted_cholesky(cov: NDArray[np.float64], limits: NDArray[np.float64],
                      ) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Cholesky factor with variables reordered by smallest conditional probability.

    Returns the lower-triangular factor and the limits in the new order.
    Rows whose pivot is below ``PIVOT_TOL`` keep a zero diagonal.
    """

    m = len(limits)
    cov = cov.copy()
    limits = limits.copy()
    chol = np.zeros((m, m))
    expected = np.zeros(m)

    for k in range(m):
        residual = np.diag(cov)[k:] - np.sum(chol[k:, :k] ** 2, axis=1)
        shifted = limits[k:] - chol[k:, :k] @ expected[:k]
        with np.errstate(divide="ignore", invalid="ignore"):
            scores = np.where(residual > PIVOT_TOL,
                              special.ndtr(shifted / np.sqrt(np.maximum(residual, PIVOT_TOL))),
                              np.inf)
        if np.all(np.isinf(scores)):
            best = k
        else:
            best = k + int(np.argmin(scores))

        if best != k:
            cov[[k, best], :] = cov[[best, k], :]
            cov[:, [k, best]] = cov[:, [best, k]]
            chol[[k, best], :] = chol[[best, k], :]
            limits[[k, best]] = limits[[best, k]]

        pivot = cov[k, k] - float(np.sum(chol[k, :k] ** 2))
        if pivot < -PIVOT_TOL * max(1.0, cov[k, k]):
            raise NotPSD(pivot)
        if pivot <= PIVOT_TOL:
            chol[k, k] = 0.0
            chol[k + 1:, k] = 0.0
            expected[k] = 0.0
            continue

        diag = math.sqrt(pivot)
        chol[k, k] = diag
        chol[k + 1:, k] = (cov[k + 1:, k] - chol[k + 1:, :k] @ chol[k, :k]) / diag

        # Mean of the standardised variable truncated to (-inf, b].
        b = (limits[k] - float(chol[k, :k] @ expected[:k])) / diag
        mass = std_cdf(b)
        expected[k] = -math.exp(-0.5 * b * b) / math.sqrt(2.0 * math.pi) / mass \
            if mass > 0.0 else b

    return chol, limits


def _integrand(chol: NDArray[np.float64], limits: NDArray[np.float64],
               w: NDArray[np.float64]) -> NDArray[np.float64]:
    """Separation-of-variables integrand at the rows of ``w`` (points x dims)."""

    m = len(limits)
    count = w.shape[0]
    y = np.zeros((count, m))
    value = np.ones(count)
    for i in range(m):
        shifted = limits[i] - y[:, :i] @ chol[i, :i]
        if chol[i, i] == 0.0:
            value *= shifted >= 0.0
            continue
        e = special.ndtr(shifted / chol[i, i])
        value *= e
        if i + 1 < m:
            # Clip away 0 and 1 so ndtri stays finite.
            u = np.clip(w[:, i] * e, 1e-300, 1.0 - 1e-16)
            y[:, i] = special.ndtri(u)
    return value


def _shift_estimate(chol: NDArray[np.float64], limits: NDArray[np.float64],
                    generator: NDArray[np.float64], shift: NDArray[np.float64],
                    points: int) -> float:
    total = 0.0
    for start in range(0, points, CHUNK):
        j = np.arange(start + 1, min(points, start + CHUNK) + 1, dtype=np.float64)
        lattice = np.mod(np.outer(j, generator) + shift, 1.0)
        w = np.abs(2.0 * lattice - 1.0)
        # Antithetic pair around the tent-transformed point.
        total += float(np.sum(_integrand(chol, limits, w)))
        total += float(np.sum(_integrand(chol, limits, 1.0 - w)))
    return total / (2.0 * points)


def mvn_cdf(problem: MvnProblem, target_abs_error: float = 1e-4,
            seed: int = 0) -> MvnResult:
    m = problem.dim
    if not 1 <= m <= MAX_DIM:
        raise OutOfRange("dimension", m, "1 <= m <= %d" % MAX_DIM)
    if not target_abs_error > 0.0:
        raise OutOfRange("target_abs_error", target_abs_error, "> 0")

    mean = np.array(problem.mean)
    cov = np.array(problem.cov).reshape(m, m)
    limits = np.array(problem.upper) - mean

    if np.any(limits == -np.inf):
        return MvnResult(value=0.0, error_estimate=0.0, points_used=0)

    # Infinite upper limits integrate out exactly: keep the finite marginal.
    finite = np.isfinite(limits)
    if not np.any(finite):
        return MvnResult(value=1.0, error_estimate=0.0, points_used=0)
    cov = cov[np.ix_(finite, finite)]
    limits = limits[finite]
    m = len(limits)

    if m == 1:
        value = std_cdf(float(limits[0]) / math.sqrt(float(cov[0, 0])))
        return MvnResult(value=value, error_estimate=0.0, points_used=0)

    chol, ordered = _pivoted_cholesky(cov, limits)

    rng = np.random.Generator(np.random.Philox(seed))
    generator = np.mod(np.sqrt(_PRIMES[:m - 1]), 1.0)

    points = INITIAL_POINTS
    while True:
        shifts = rng.random((SHIFTS, m - 1))
        estimates = np.array([_shift_estimate(chol, ordered, generator, shift, points)
                              for shift in shifts])
        value = float(np.mean(estimates))
        error = 3.0 * float(np.std(estimates, ddof=1)) / math.sqrt(SHIFTS)
        used = SHIFTS * points * 2
        logger.debug("MVN CDF in %d dims: %r +- %r with %d points.", m, value, error, used)
        if error <= target_abs_error or 2 * used > MAX_POINTS:
            break
        points *= 2

    return MvnResult(value=min(1.0, max(0.0, value)), error_estimate=error,
                     points_used=used)
