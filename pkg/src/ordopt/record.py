
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

from .model import ProbabilityResult, ProblemSpec


Scalar = Union[int, float, str, bool, None]
Params = Dict[str, Scalar]


@dataclass(frozen=True)
class ResultRecord:
    """One line of command output.

    ``method``, ``params`` and ``value`` are always emitted; the optional
    fields are left out when absent.  ``extras`` carries method-specific
    evidence such as the angle used or the number of quadrature terms.
    """

    method: str
    params: Params
    value: Optional[float]
    error_estimate: Optional[float] = None
    seed: Optional[int] = None
    log_n: Optional[float] = None
    extras: Params = field(default_factory=dict)

    @staticmethod
    def from_probability(result: ProbabilityResult, params: Params,
                         **extras: Scalar) -> "ResultRecord":
        return ResultRecord(method=result.method, params=params, value=result.value,
                            error_estimate=result.error_estimate, seed=result.seed,
                            extras=dict(extras))

    @staticmethod
    def failure(method: str, params: Params, message: str) -> "ResultRecord":
        return ResultRecord(method=method, params=params, value=None,
                            extras={"error": message})


def problem_params(spec: ProblemSpec) -> Params:
    return {"n": spec.n, "m": spec.m, "alpha": spec.alpha, "rho": spec.rho}
