
"""
Seeded Monte-Carlo estimation of the success probability.

Replications are grouped into blocks whose size depends on ``n`` alone.  Block
``b`` draws from a Philox stream keyed by ``(seed, b)``, so the numbers a
replication sees never depend on how blocks are spread over workers.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .config import resolve_workers
from .gaussfn import std_quantile
from .logger import logger
from .model import ProbabilityResult, ProblemSpec
from .user_error import OutOfRange


BLOCK_CELLS = 1 << 20
MAX_BLOCK_ROWS = 4096
Z_95 = 1.959963984540054


@dataclass(frozen=True)
class McConfig:
    replications: int
    seed: int
    workers: Optional[int] = None

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise OutOfRange("replications", self.replications, "replications >= 1")
        if not 0 <= self.seed < 1 << 64:
            raise OutOfRange("seed", self.seed, "0 <= seed < 2**64")
        if self.workers is not None and self.workers < 1:
            raise OutOfRange("workers", self.workers, "workers >= 1")


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    std_err: float
    ci95: Tuple[float, float]
    replications: int

    def as_probability(self, seed: int) -> ProbabilityResult:
        return ProbabilityResult(value=self.p_hat, method="simulate",
                                 error_estimate=self.std_err, seed=seed)


def block_rows(n: int) -> int:
    return max(1, min(MAX_BLOCK_ROWS, BLOCK_CELLS // n))


def block_stream(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, block))))


def sample_copula_pairs(spec: ProblemSpec, count: int, stream: np.random.Generator,
                        ) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """``count`` standard bivariate normal pairs ``(z, x)`` with correlation ``rho``."""

    g1 = stream.standard_normal(count)
    g2 = stream.standard_normal(count)
    rho = spec.rho
    z = rho * g1 + math.sqrt(1.0 - rho * rho) * g2
    return z, g1


def select_smallest(values: ArrayLike, m: int) -> NDArray[np.intp]:
    """Indices of the ``m`` smallest entries along the last axis (unordered)."""

    arr = np.asarray(values)
    size = arr.shape[-1]
    if not 1 <= m <= size:
        raise OutOfRange("m", m, "1 <= m <= %d" % size)
    if m == size:
        return np.broadcast_to(np.arange(size), arr.shape).copy()
    return np.argpartition(arr, m - 1, axis=-1)[..., :m]


def _count_block(spec: ProblemSpec, x_star: float, seed: int, block: int,
                 rows: int) -> int:
    stream = block_stream(seed, block)
    z, x = sample_copula_pairs(spec, rows * spec.n, stream)
    z = z.reshape(rows, spec.n)
    x = x.reshape(rows, spec.n)
    chosen = select_smallest(z, spec.m)
    best = np.min(np.take_along_axis(x, chosen, axis=-1), axis=-1)
    return int(np.count_nonzero(best <= x_star))


def wilson_interval(successes: int, trials: int) -> Tuple[float, float]:
    p = successes / trials
    z2 = Z_95 * Z_95
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = Z_95 / denom * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def _estimate(successes: int, trials: int) -> McEstimate:
    p_hat = successes / trials
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    if successes in (0, trials):
        ci = wilson_interval(successes, trials)
    else:
        ci = (max(0.0, p_hat - Z_95 * std_err), min(1.0, p_hat + Z_95 * std_err))
    return McEstimate(p_hat=p_hat, std_err=std_err, ci95=ci, replications=trials)


def _run_blocks(cfg: McConfig, rows: int, count_block: Callable[[int, int], int]) -> int:
    blocks: List[Tuple[int, int]] = []
    for block, start in enumerate(range(0, cfg.replications, rows)):
        blocks.append((block, min(rows, cfg.replications - start)))

    workers = min(resolve_workers(cfg.workers), len(blocks))
    if workers == 1:
        return sum(count_block(b, r) for b, r in blocks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda item: count_block(*item), blocks))


def mc_estimate(spec: ProblemSpec, cfg: McConfig) -> McEstimate:
    x_star = std_quantile(spec.alpha)
    if spec.alpha == 1.0:
        return _estimate(cfg.replications, cfg.replications)

    def count_block(block: int, rows: int) -> int:
        return _count_block(spec, x_star, cfg.seed, block, rows)

    successes = _run_blocks(cfg, block_rows(spec.n), count_block)
    logger.debug("Simulated %r: %d successes in %d replications.",
                 spec, successes, cfg.replications)
    return _estimate(successes, cfg.replications)


def _conditional_block(spec: ProblemSpec, g: int, seed: int, block: int,
                       rows: int) -> int:
    stream = block_stream(seed, block)
    alpha, rho = spec.alpha, spec.rho
    noise_sd = math.sqrt(1.0 - rho * rho) / rho

    # Inverse-CDF draws restricted to either side of the threshold.
    u_good = stream.random((rows, g)) * alpha
    u_bad = alpha + stream.random((rows, spec.n - g)) * (1.0 - alpha)
    z_good = special.ndtri(u_good) + noise_sd * stream.standard_normal((rows, g))
    z_bad = special.ndtri(u_bad) + noise_sd * stream.standard_normal((rows, spec.n - g))

    mth_bad = np.take_along_axis(z_bad, select_smallest(z_bad, spec.m), axis=-1).max(axis=-1)
    return int(np.count_nonzero(mth_bad < z_good.min(axis=-1)))


def mc_conditional_failure(spec: ProblemSpec, g: int, cfg: McConfig) -> McEstimate:
    """Simulated probability of missing every acceptable candidate given exactly ``g``."""

    if not 1 <= g <= spec.n - spec.m:
        raise OutOfRange("g", g, "1 <= g <= n - m = %d" % (spec.n - spec.m))

    def count_block(block: int, rows: int) -> int:
        return _conditional_block(spec, g, cfg.seed, block, rows)

    failures = _run_blocks(cfg, block_rows(spec.n), count_block)
    return _estimate(failures, cfg.replications)
