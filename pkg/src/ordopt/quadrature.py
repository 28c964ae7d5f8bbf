
"""
Adaptive Gauss-Kronrod quadrature with the failure policy used throughout
the package: a result whose error estimate misses the requested tolerance by
more than a factor of ``SLACK`` raises :class:`QuadratureFailure` instead of
being returned silently.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy import integrate

from .logger import logger
from .user_error import OutOfRange, QuadratureFailure


SLACK = 100.0


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 1000

    def __post_init__(self) -> None:
        if not self.abs_tol > 0.0:
            raise OutOfRange("abs_tol", self.abs_tol, "abs_tol > 0")
        if not self.rel_tol >= 0.0:
            raise OutOfRange("rel_tol", self.rel_tol, "rel_tol >= 0")
        if self.max_subdivisions < 10:
            raise OutOfRange("max_subdivisions", self.max_subdivisions,
                             "max_subdivisions >= 10")


DEFAULT_QUADRATURE = QuadratureConfig()


def _tolerance(cfg: QuadratureConfig, value: float) -> float:
    return max(cfg.abs_tol, cfg.rel_tol * abs(value))


def integrate_scalar(f: Callable[[float], float], a: float, b: float,
                     cfg: QuadratureConfig, what: str,
                     points: Optional[Sequence[float]] = None) -> Tuple[float, float]:
    """Integrate ``f`` over the finite interval ``[a, b]``."""

    if not b > a:
        return 0.0, 0.0

    inner = None
    if points is not None:
        inner = [p for p in points if a < p < b] or None

    ret = integrate.quad(f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                         limit=cfg.max_subdivisions, points=inner,
                         full_output=1)
    value, error = float(ret[0]), float(ret[1])
    if len(ret) > 3:
        # quad only appends a message when it flags a problem.
        if error > SLACK * _tolerance(cfg, value):
            raise QuadratureFailure(what, error)
        logger.debug("Quadrature for %s flagged %r, accepted with error %r.",
                     what, ret[3], error)
    return value, error


def integrate_vector(f: Callable[[float], NDArray[np.float64]], a: float, b: float,
                     cfg: QuadratureConfig, what: str,
                     points: Optional[Sequence[float]] = None,
                     ) -> Tuple[NDArray[np.float64], float]:
    """Integrate a vector-valued ``f`` over ``[a, b]`` sharing one adaptive mesh."""

    inner = None
    if points is not None:
        inner = [p for p in points if a < p < b] or None

    value, error, info = integrate.quad_vec(
        f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, norm="max",
        limit=cfg.max_subdivisions, points=inner, full_output=True)
    value = np.asarray(value, dtype=np.float64)
    error = float(error)
    if not info.success:
        scale = float(np.max(np.abs(value))) if value.size else 0.0
        if error > SLACK * _tolerance(cfg, scale):
            raise QuadratureFailure(what, error)
        logger.debug("Vector quadrature for %s stopped early (%r), accepted with error %r.",
                     what, info.message, error)
    return value, error
