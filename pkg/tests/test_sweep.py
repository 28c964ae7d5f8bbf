
import pytest

from ordopt.model import make_problem
from ordopt.parser import ValueList, ValueRange, parse_values
from ordopt.sweep import SweepSpec, materialise_values
from ordopt.user_error import OutOfRange


BASE = make_problem(100, 5, 0.05, 0.6)


def test_linear_range() -> None:
    assert materialise_values(ValueRange(0.0, 1.0, 5, "linear")) == pytest.approx(
        [0.0, 0.25, 0.5, 0.75, 1.0])


def test_log_range() -> None:
    assert materialise_values(parse_values("100:100000:4:log")) == pytest.approx(
        [100.0, 1000.0, 10000.0, 100000.0])


def test_single_step_range() -> None:
    assert materialise_values(ValueRange(3.0, 7.0, 1, "linear")) == [3.0]


def test_bad_ranges() -> None:
    with pytest.raises(OutOfRange):
        materialise_values(ValueRange(0.0, 10.0, 3, "log"))
    with pytest.raises(OutOfRange):
        materialise_values(ValueRange(1.0, 10.0, 0, "linear"))


def test_vary_sample_size() -> None:
    points = SweepSpec("n", ValueList((10.0, 20.0)), BASE).points()
    assert [p.n for p in points] == [10, 20]
    assert all(p.m == 5 and p.alpha == 0.05 and p.rho == 0.6 for p in points)


def test_vary_selection_from_range() -> None:
    points = SweepSpec("m", parse_values("1:5:3"), BASE).points()
    assert [p.m for p in points] == [1, 3, 5]
    assert all(isinstance(p.m, int) for p in points)


def test_vary_correlation() -> None:
    points = SweepSpec("rho", parse_values("0.2,0.5,1"), BASE).points()
    assert [p.rho for p in points] == [0.2, 0.5, 1.0]


def test_fractional_count_rejected() -> None:
    with pytest.raises(OutOfRange):
        SweepSpec("n", ValueList((10.5,)), BASE).points()


def test_invalid_point_rejects_sweep() -> None:
    with pytest.raises(OutOfRange) as info:
        SweepSpec("alpha", parse_values("0.1,1.5"), BASE).points()
    assert info.value.field == "alpha"
    with pytest.raises(OutOfRange):
        SweepSpec("n", parse_values("1,2"), BASE).points()
