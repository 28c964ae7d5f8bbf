
import math

import numpy as np
import pytest

from ordopt.quadrature import QuadratureConfig, integrate_scalar, integrate_vector
from ordopt.user_error import OutOfRange, QuadratureFailure


CFG = QuadratureConfig()


def test_gaussian_mass() -> None:
    value, error = integrate_scalar(
        lambda x: math.exp(-x * x / 2) / math.sqrt(2 * math.pi), -9.0, 9.0, CFG, "mass")
    assert value == pytest.approx(1.0, abs=1e-12)
    assert error < 1e-9


def test_empty_interval() -> None:
    assert integrate_scalar(math.exp, 1.0, 1.0, CFG, "empty") == (0.0, 0.0)
    assert integrate_scalar(math.exp, 2.0, 1.0, CFG, "reversed") == (0.0, 0.0)


def test_breakpoints_outside_are_ignored() -> None:
    value, _ = integrate_scalar(abs, -1.0, 2.0, CFG, "kink", points=[0.0, 5.0, -3.0])
    assert value == pytest.approx(2.5, abs=1e-12)


def test_vector_integrand() -> None:
    value, error = integrate_vector(lambda x: np.array([x, x * x, 1.0]), 0.0, 1.0, CFG,
                                    "moments")
    assert value == pytest.approx([0.5, 1 / 3, 1.0], abs=1e-12)
    assert error < 1e-9


def test_unreachable_tolerance_raises() -> None:
    cfg = QuadratureConfig(abs_tol=1e-14, rel_tol=0.0, max_subdivisions=10)
    with pytest.raises(QuadratureFailure):
        integrate_scalar(lambda x: math.sin(1000 * x) ** 2, 0.0, 100.0, cfg, "oscillation")


def test_config_validation() -> None:
    with pytest.raises(OutOfRange):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(OutOfRange):
        QuadratureConfig(rel_tol=-1.0)
    with pytest.raises(OutOfRange):
        QuadratureConfig(max_subdivisions=5)
