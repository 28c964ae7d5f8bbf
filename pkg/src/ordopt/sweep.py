
"""One-parameter-at-a-time sweeps around a base problem."""

from dataclasses import dataclass, replace
from typing import List, Literal

import numpy as np

from .model import ProblemSpec
from .parser import SweepValues, ValueList, ValueRange
from .user_error import OutOfRange


Vary = Literal["n", "m", "alpha", "rho"]


def materialise_values(values: SweepValues) -> List[float]:
    if isinstance(values, ValueList):
        return list(values.values)

    if values.steps < 1:
        raise OutOfRange("steps", values.steps, "steps >= 1")
    if values.scale == "log":
        if not (values.start > 0.0 and values.stop > 0.0):
            raise OutOfRange("range", (values.start, values.stop),
                             "positive endpoints for a log range")
        points = np.geomspace(values.start, values.stop, values.steps)
    else:
        points = np.linspace(values.start, values.stop, values.steps)
    return [float(v) for v in points]


@dataclass(frozen=True)
class SweepSpec:
    vary: Vary
    values: SweepValues
    base: ProblemSpec

    def points(self) -> List[ProblemSpec]:
        """Every point of the sweep; an invalid point rejects the whole sweep."""

        ret: List[ProblemSpec] = []
        for value in materialise_values(self.values):
            if self.vary in ("n", "m"):
                count = int(round(value))
                if count != value and not isinstance(self.values, ValueRange):
                    raise OutOfRange(self.vary, value, "an integer")
                ret.append(replace(self.base, **{self.vary: count}))
            else:
                ret.append(replace(self.base, **{self.vary: value}))
        return ret
