
from typing import Callable, Dict, List, Literal, Optional, Sequence

from .approx import ApproxConfig, approx_success_probability
from .bounds import (
    dist_free_bounds,
    empirical_threshold,
    lower_bound,
    optimised_lower_bound,
)
from .exact import exact_success_probability
from .gaussfn import QBoundConstants
from .logger import logger
from .mc import McConfig, mc_estimate
from .model import ProblemSpec
from .planner import TABLE1_ALPHA, PlanResult, plan_sample_size, table1
from .quadrature import QuadratureConfig
from .record import Params, ResultRecord, problem_params
from .sweep import SweepSpec
from .user_error import UserError


SweepMethod = Literal["exact", "approx", "bound", "distfree", "simulate", "all"]
ALL_METHODS: Sequence[SweepMethod] = ("exact", "approx", "distfree", "bound", "simulate")


def run_exact(spec: ProblemSpec, cfg: QuadratureConfig) -> List[ResultRecord]:
    result = exact_success_probability(spec, cfg)
    return [ResultRecord.from_probability(result.as_probability(), problem_params(spec),
                                          terms_evaluated=result.terms_evaluated)]


def run_approx(spec: ProblemSpec, seed: int, cfg: ApproxConfig) -> List[ResultRecord]:
    result = approx_success_probability(spec, seed=seed, cfg=cfg)
    return [ResultRecord.from_probability(result, problem_params(spec),
                                          covariance_reading=cfg.covariance_reading)]


def run_bound(n: int, alpha: float, rho: float, theta: Optional[float]) -> List[ResultRecord]:
    params: Params = {"n": n, "alpha": alpha, "rho": rho}
    if theta is None:
        result = optimised_lower_bound(n, alpha, rho)
    else:
        params["theta"] = theta
        result = lower_bound(n, alpha, rho, theta)
    return [ResultRecord.from_probability(result.as_probability(), dict(params),
                                          theta_used=result.theta_used,
                                          feasible=result.feasible)]


def run_distfree(n: int, m: int, alpha: float) -> List[ResultRecord]:
    lower, upper = dist_free_bounds(n, m, alpha)
    params: Params = {"n": n, "m": m, "alpha": alpha}
    return [
        ResultRecord(method="dist_free_lower", params=dict(params), value=lower),
        ResultRecord(method="dist_free_upper", params=dict(params), value=upper),
    ]


def run_simulate(spec: ProblemSpec, cfg: McConfig) -> List[ResultRecord]:
    estimate = mc_estimate(spec, cfg)
    lower, upper = estimate.ci95
    return [ResultRecord.from_probability(estimate.as_probability(cfg.seed),
                                          problem_params(spec),
                                          ci95_lower=lower, ci95_upper=upper,
                                          replications=estimate.replications)]


def _plan_record(alpha: float, rho: float, delta: float, plan: PlanResult) -> ResultRecord:
    return ResultRecord(
        method="plan",
        params={"alpha": alpha, "rho": rho, "delta": delta},
        value=plan.n_exact,
        log_n=plan.log_n,
        extras={
            "log10_n": plan.log10_n,
            "n_text": plan.rendered(),
            "theta_used": plan.theta_used,
            "certified": plan.certified,
        },
    )


def run_plan(alpha: float, rho: float, delta: float) -> List[ResultRecord]:
    return [_plan_record(alpha, rho, delta, plan_sample_size(alpha, rho, delta))]


def run_table1() -> List[ResultRecord]:
    return [_plan_record(TABLE1_ALPHA, rho, delta, plan) for rho, delta, plan in table1()]


def run_threshold(theta: float, n_max: int) -> List[ResultRecord]:
    constants = QBoundConstants.from_theta(theta)
    found = empirical_threshold(theta, n_max)
    return [ResultRecord(method="threshold", params={"theta": theta, "n_max": n_max},
                         value=found, extras={"c1": constants.c1, "c2": constants.c2})]


def run_sweep(sweep: SweepSpec, method: SweepMethod, seed: int, replications: int,
              workers: Optional[int], quadrature: QuadratureConfig,
              approx: ApproxConfig) -> List[ResultRecord]:
    runners: Dict[SweepMethod, Callable[[ProblemSpec], List[ResultRecord]]] = {
        "exact": lambda s: run_exact(s, quadrature),
        "approx": lambda s: run_approx(s, seed, approx),
        "distfree": lambda s: run_distfree(s.n, s.m, s.alpha),
        "bound": lambda s: run_bound(s.n, s.alpha, s.rho, None),
        "simulate": lambda s: run_simulate(
            s, McConfig(replications=replications, seed=seed, workers=workers)),
    }
    methods = ALL_METHODS if method == "all" else (method,)

    records: List[ResultRecord] = []
    points = sweep.points()
    for index, spec in enumerate(points):
        logger.info("Sweep point %d of %d: %r.", index + 1, len(points), spec)
        for name in methods:
            try:
                records.extend(runners[name](spec))
            except UserError as e:
                logger.warning("Sweep point %r failed for %s: %s", spec, name, e)
                records.append(ResultRecord.failure(name, problem_params(spec), str(e)))
    return records
