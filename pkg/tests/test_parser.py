
import pytest

from ordopt.parser import ValueList, ValueRange, parse_values
from ordopt.user_error import UsageError


# -------------------------------------------------------------------
# Lists
# -------------------------------------------------------------------

def test_explicit_list() -> None:
    assert parse_values("1,2,5") == ValueList((1.0, 2.0, 5.0))


def test_single_value() -> None:
    assert parse_values("0.3") == ValueList((0.3,))


def test_list_with_blanks_and_exponents() -> None:
    assert parse_values(" 1e2 , -0.5,+3 ") == ValueList((100.0, -0.5, 3.0))


# -------------------------------------------------------------------
# Ranges
# -------------------------------------------------------------------

def test_range_defaults_to_linear() -> None:
    assert parse_values("0.1:0.9:9") == ValueRange(0.1, 0.9, 9, "linear")


def test_range_with_scale() -> None:
    assert parse_values("100:100000:4:log") == ValueRange(100.0, 100000.0, 4, "log")
    assert parse_values("0:1:3:linear") == ValueRange(0.0, 1.0, 3, "linear")


def test_range_steps_must_be_integral() -> None:
    with pytest.raises(UsageError):
        parse_values("1:2:2.5")


# -------------------------------------------------------------------
# Malformed input
# -------------------------------------------------------------------

@pytest.mark.parametrize("text", [
    "",
    "abc",
    "1,",
    "1:2",
    "1:2:3:cubic",
    "1:2:3:log:5",
    "1,2:3",
])
def test_malformed(text: str) -> None:
    with pytest.raises(UsageError):
        parse_values(text)


def test_error_message_shows_forms() -> None:
    with pytest.raises(UsageError) as info:
        parse_values("1;2")
    assert "start:stop:steps" in str(info.value)
