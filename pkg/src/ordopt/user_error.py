
from dataclasses import dataclass
from typing import Sequence


VALIDATION_ERROR_CODE = 2
NUMERICAL_ERROR_CODE = 3


@dataclass(frozen=True)
class UserError(BaseException):
    fmt: str
    fmt_args: Sequence[object]
    code: int

    def _init(self, fmt: str, *fmt_args: object, code: int = 1) -> None:
        UserError.__init__(self, fmt=fmt, fmt_args=fmt_args, code=code)

    def __str__(self) -> str:
        return self.fmt % tuple(self.fmt_args)


class ValidationError(UserError):
    pass


class NumericalError(UserError):
    pass


class OutOfRange(ValidationError):
    def __init__(self, field: str, value: object, constraint: str) -> None:
        self.field = field
        self._init("Parameter %s = %r is out of range: expected %s.",
                   field, value, constraint, code=VALIDATION_ERROR_CODE)


class DimensionMismatch(ValidationError):
    def __init__(self, what: str, expected: int, got: int) -> None:
        self._init("Dimension mismatch in %s: expected %d, got %d.",
                   what, expected, got, code=VALIDATION_ERROR_CODE)


class Degenerate(ValidationError):
    def __init__(self, reason: str) -> None:
        self._init("Degenerate problem: %s.", reason, code=VALIDATION_ERROR_CODE)


class UsageError(ValidationError):
    def __init__(self, reason: str) -> None:
        self._init("%s", reason, code=VALIDATION_ERROR_CODE)


class NotPSD(NumericalError):
    def __init__(self, pivot: float) -> None:
        self._init("Covariance is not positive semidefinite (pivot %r).",
                   pivot, code=NUMERICAL_ERROR_CODE)


class QuadratureFailure(NumericalError):
    def __init__(self, what: str, error: float) -> None:
        self._init("Quadrature for %s did not reach tolerance (error estimate %r).",
                   what, error, code=NUMERICAL_ERROR_CODE)


class NoRealRoot(NumericalError):
    def __init__(self, coefficients: Sequence[float]) -> None:
        self._init("Polynomial with coefficients %r has no nonnegative real root.",
                   list(coefficients), code=NUMERICAL_ERROR_CODE)


class Infeasible(NumericalError):
    def __init__(self, reason: str) -> None:
        self._init("Infeasible: %s.", reason, code=NUMERICAL_ERROR_CODE)
