
import math

import numpy as np
import pytest
from scipy import integrate

from ordopt.gaussfn import std_cdf, std_pdf
from ordopt.mvncdf import MvnProblem, mvn_cdf
from ordopt.user_error import DimensionMismatch, NotPSD, OutOfRange


@pytest.mark.parametrize("rho", [-0.9, -0.3, 0.0, 0.3, 0.6, 0.9])
def test_bivariate_orthant(rho: float) -> None:
    problem = MvnProblem.build([0.0, 0.0], [[1.0, rho], [rho, 1.0]], [0.0, 0.0])
    result = mvn_cdf(problem, target_abs_error=1e-5)
    assert result.value == pytest.approx(0.25 + math.asin(rho) / (2 * math.pi), abs=1e-4)


@pytest.mark.parametrize("m", [2, 5, 10])
def test_independent_factorisation(m: int) -> None:
    upper = np.linspace(-1.0, 1.5, m)
    mean = np.linspace(0.2, -0.2, m)
    problem = MvnProblem.build(mean, np.eye(m), upper)
    expected = math.prod(std_cdf(float(u - mu)) for u, mu in zip(upper, mean))
    assert mvn_cdf(problem).value == pytest.approx(expected, abs=1e-4)


def test_one_dimension_is_exact() -> None:
    problem = MvnProblem.build([1.0], [[4.0]], [2.0])
    result = mvn_cdf(problem)
    assert result.value == std_cdf(0.5)
    assert result.error_estimate == 0.0


def test_infinite_limits() -> None:
    cov = [[1.0, 0.5], [0.5, 1.0]]
    assert mvn_cdf(MvnProblem.build([0.0, 0.0], cov, [-math.inf, 1.0])).value == 0.0
    assert mvn_cdf(MvnProblem.build([0.0, 0.0], cov, [math.inf, math.inf])).value == 1.0
    assert mvn_cdf(MvnProblem.build([0.0, 0.0], cov, [math.inf, 0.0])).value == 0.5


def test_singular_covariance() -> None:
    # Both coordinates are the same variable.
    problem = MvnProblem.build([0.0, 0.0], [[1.0, 1.0], [1.0, 1.0]], [0.5, 0.0])
    assert mvn_cdf(problem).value == pytest.approx(0.5, abs=1e-12)


def test_not_psd() -> None:
    problem = MvnProblem.build([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]], [0.0, 0.0])
    with pytest.raises(NotPSD):
        mvn_cdf(problem)


def test_invalid_problems() -> None:
    with pytest.raises(DimensionMismatch):
        MvnProblem.build([0.0, 0.0], np.eye(2), [0.0, 0.0, 0.0])
    with pytest.raises(OutOfRange):
        MvnProblem.build([0.0, 0.0], [[1.0, 0.5], [0.4, 1.0]], [0.0, 0.0])
    with pytest.raises(OutOfRange):
        MvnProblem.build([0.0], [[0.0]], [0.0])
    with pytest.raises(OutOfRange):
        mvn_cdf(MvnProblem.build(np.zeros(65), np.eye(65), np.zeros(65)))


def test_deterministic_per_seed() -> None:
    cov = 0.5 * np.eye(4) + 0.5
    problem = MvnProblem.build(np.zeros(4), cov, np.full(4, 0.3))
    first = mvn_cdf(problem, seed=7)
    second = mvn_cdf(problem, seed=7)
    assert first == second
    assert first.error_estimate <= 1e-4


def _one_factor_cdf(loadings: np.ndarray, upper: np.ndarray) -> float:
    # Condition on the common factor; the residuals are then independent.
    residual = np.sqrt(1.0 - loadings ** 2)

    def integrand(t: float) -> float:
        return std_pdf(t) * math.prod(
            std_cdf(float((u - lam * t) / s)) for u, lam, s in zip(upper, loadings, residual))

    value, _ = integrate.quad(integrand, -12.0, 12.0, epsabs=1e-12, limit=200)
    return float(value)


@pytest.mark.parametrize("loadings, upper", [
    ([0.8, -0.5], [0.3, -0.7]),
    ([0.2, 0.9], [1.5, 0.0]),
    ([0.7, 0.7, 0.7], [0.0, 0.0, 0.0]),
    ([0.9, -0.3, 0.6], [-0.4, 1.1, 0.5]),
    ([0.5, 0.95, 0.1], [2.0, -1.0, 0.3]),
])
def test_matches_quadrature_oracle(loadings: list, upper: list) -> None:  # type: ignore[type-arg]
    lam = np.asarray(loadings)
    cov = np.outer(lam, lam) + np.diag(1.0 - lam ** 2)
    mean = np.linspace(-0.3, 0.3, len(lam))
    problem = MvnProblem.build(mean, cov, upper)
    expected = _one_factor_cdf(lam, np.asarray(upper) - mean)
    result = mvn_cdf(problem, target_abs_error=1e-5)
    assert result.value == pytest.approx(expected, abs=1e-4)


def test_monotone_in_upper_limits() -> None:
    cov = np.array([[1.0, 0.6, 0.3], [0.6, 1.0, 0.5], [0.3, 0.5, 1.0]])
    rng = np.random.default_rng(17)
    upper = rng.normal(size=3)
    previous = mvn_cdf(MvnProblem.build(np.zeros(3), cov, upper), seed=3)
    for _ in range(12):
        upper = upper + rng.uniform(0.0, 0.4, size=3)
        current = mvn_cdf(MvnProblem.build(np.zeros(3), cov, upper), seed=3)
        slack = 3 * (previous.error_estimate + current.error_estimate)
        assert current.value >= previous.value - slack
        previous = current
