
import math

import numpy as np
import pytest
from scipy import special

from ordopt.gaussfn import (
    LOG_LOG_2,
    QBoundConstants,
    log_binomial_pmf,
    log_binomial_weights,
    log_neg_log_q,
    log_q_function,
    q_bounds,
    q_function,
    std_cdf,
    std_pdf,
    std_quantile,
)
from ordopt.user_error import OutOfRange


def test_basic_values() -> None:
    assert std_cdf(0.0) == 0.5
    assert std_pdf(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert std_pdf(math.inf) == 0.0
    assert std_quantile(0.5) == 0.0
    assert std_quantile(0.0) == -math.inf
    assert std_quantile(1.0) == math.inf
    assert LOG_LOG_2 == pytest.approx(-0.36651292058)


def test_quantile_rejects_out_of_range() -> None:
    with pytest.raises(OutOfRange):
        std_quantile(1.5)


def test_q_function_tail_is_accurate() -> None:
    # Q(8) computed directly, not as 1 - Phi(8).
    assert q_function(8.0) == pytest.approx(6.22096057427178e-16, rel=1e-10)
    assert log_q_function(40.0) == pytest.approx(float(special.log_ndtr(-40.0)))


@pytest.mark.parametrize("x", [-3.0, -1.0, 0.0, 1.0, 5.0])
def test_log_neg_log_q_matches_direct_form(x: float) -> None:
    direct = math.log(-math.log(q_function(x)))
    assert float(log_neg_log_q(x)) == pytest.approx(direct, rel=1e-10)


def test_log_neg_log_q_far_left_tail() -> None:
    values = log_neg_log_q(np.array([-40.0, -400.0]))
    assert np.all(np.isfinite(values))
    assert values[0] == pytest.approx(float(special.log_ndtr(-40.0)), rel=1e-12)
    assert values[1] < values[0]


def test_q_bound_constants() -> None:
    constants = QBoundConstants.from_theta(math.pi / 4)
    assert constants.c1 == pytest.approx(0.25)
    assert constants.c2 == pytest.approx(2 / math.pi)
    with pytest.raises(OutOfRange):
        QBoundConstants.from_theta(math.pi / 2)


SANDWICH_THETAS = [round(0.1 * k, 1) for k in range(1, 16)] + [math.pi / 4]


@pytest.mark.parametrize("theta", SANDWICH_THETAS)
def test_q_bounds_sandwich(theta: float) -> None:
    for x in np.linspace(0.0, 8.0, 81):
        lower, upper = q_bounds(float(x), theta)
        assert lower <= q_function(float(x)) <= upper


def test_q_bounds_reject_negative() -> None:
    with pytest.raises(OutOfRange):
        q_bounds(-1.0, 0.5)


def test_binomial_weights() -> None:
    weights = np.exp(log_binomial_weights(30, 0.2))
    assert weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert weights[3] == pytest.approx(math.comb(30, 3) * 0.2 ** 3 * 0.8 ** 27)
    assert log_binomial_pmf(30, 3, 0.2) == pytest.approx(math.log(weights[3]))


def test_binomial_endpoints() -> None:
    assert log_binomial_pmf(10, 0, 0.0) == 0.0
    assert log_binomial_pmf(10, 10, 1.0) == 0.0
    with pytest.raises(OutOfRange):
        log_binomial_pmf(10, 11, 0.5)


def test_q_bounds_examples() -> None:
    lower, upper = q_bounds(1.0, math.pi / 4)
    assert lower == pytest.approx(0.25 * math.exp(-2 / math.pi))
    assert upper == pytest.approx(0.5 * math.exp(-0.5))
    assert lower == pytest.approx(0.1324, abs=1e-4)
    assert q_function(1.0) == pytest.approx(0.1587, abs=1e-4)


def test_log_of_miss_probability_is_sandwiched() -> None:
    # A single draw misses with log-probability log(1 - p).
    for p in np.linspace(0.0, 0.5, 501):
        log_miss = log_binomial_pmf(1, 0, float(p))
        assert -p * math.log(4.0) - 1e-12 <= log_miss <= -p + 1e-12


@pytest.mark.parametrize("n", range(0, 61))
def test_binomial_pmf_sums_to_one(n: int) -> None:
    for alpha in (0.01, 0.05, 0.3, 0.5, 0.97):
        total = sum(math.exp(log_binomial_pmf(n, g, alpha)) for g in range(n + 1))
        assert total == pytest.approx(1.0, abs=1e-10)


def test_binomial_pmf_examples() -> None:
    assert log_binomial_pmf(2, 1, 0.5) == pytest.approx(math.log(0.5))
    assert log_binomial_pmf(100, 0, 0.05) == pytest.approx(100 * math.log(0.95), rel=1e-14)
    direct = math.comb(100, 7) * 0.05 ** 7 * 0.95 ** 93
    assert log_binomial_pmf(100, 7, 0.05) == pytest.approx(math.log(direct), rel=1e-12)
