
import argparse
import sys
from typing import List, Optional, Sequence

from .approx import ApproxConfig
from .config import WORKERS_ENV
from .main_typed import (
    run_approx,
    run_bound,
    run_distfree,
    run_exact,
    run_plan,
    run_simulate,
    run_sweep,
    run_table1,
    run_threshold,
)
from .mainwrap import mainwrap
from .mc import McConfig
from .model import make_problem, noise_to_copula
from .parsecli import output_options, parse_cli
from .parser import parse_values
from .quadrature import QuadratureConfig
from .record import ResultRecord
from .sweep import SweepSpec
from .unparser import serialize_records


def _add_correlation(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--rho", type=float, help="Gaussian-copula correlation in (0, 1].")
    group.add_argument("--xi2", type=float, help="Noise-to-signal ratio, instead of --rho.")


def _add_problem(parser: argparse.ArgumentParser, with_m: bool = True) -> None:
    parser.add_argument("-n", type=int, required=True, help="Number of sampled candidates.")
    if with_m:
        parser.add_argument("-m", type=int, required=True, help="Number selected.")
    parser.add_argument("--alpha", type=float, required=True,
                        help="Acceptable fraction of the population.")
    _add_correlation(parser)


def _add_quadrature(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--abs-tol", type=float, default=QuadratureConfig.abs_tol)
    parser.add_argument("--rel-tol", type=float, default=QuadratureConfig.rel_tol)
    parser.add_argument("--max-subdivisions", type=int,
                        default=QuadratureConfig.max_subdivisions)


def _add_approx(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--target-error", type=float, default=ApproxConfig.target_abs_error,
                        help="Target absolute error of the multivariate normal CDF.")
    parser.add_argument("--covariance", choices=["standard", "noise_scaled"],
                        default="standard",
                        help="Density used in the order-statistic covariance.")


def _add_simulation(parser: argparse.ArgumentParser, seed_required: bool) -> None:
    parser.add_argument("--seed", type=int, required=seed_required, default=0)
    parser.add_argument("--replications", type=int, default=20_000)
    parser.add_argument("--workers", type=int, default=None,
                        help="Worker threads (default: $%s or the CPU count)." % WORKERS_ENV)


def cli_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordopt",
        description="Success probabilities of ordinal optimisation "
                    "under the Gaussian copula model.")
    output = output_options()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[output], help="Exact success probability.")
    _add_problem(p)
    _add_quadrature(p)

    p = sub.add_parser("approx", parents=[output], help="Gaussian-surrogate approximation.")
    _add_problem(p)
    _add_approx(p)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bound", parents=[output],
                       help="Lower bound, optimised over the angle unless --theta is given.")
    _add_problem(p, with_m=False)
    p.add_argument("--theta", type=float, default=None)

    p = sub.add_parser("distfree", parents=[output], help="Distribution-free bounds.")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("simulate", parents=[output], help="Monte-Carlo estimate.")
    _add_problem(p)
    _add_simulation(p, seed_required=True)

    p = sub.add_parser("plan", parents=[output],
                       help="Smallest certified n for success probability >= 1 - delta.")
    p.add_argument("--alpha", type=float, required=True)
    _add_correlation(p)
    p.add_argument("--delta", type=float, required=True)

    p = sub.add_parser("sweep", parents=[output],
                       help="Vary one parameter around a base problem.")
    _add_problem(p)
    p.add_argument("--vary", choices=["n", "m", "alpha", "rho"], required=True)
    p.add_argument("--values", required=True,
                   help="'1,2,5' or 'start:stop:steps[:linear|log]'.")
    p.add_argument("--method", choices=["exact", "approx", "bound", "distfree",
                                        "simulate", "all"], default="all")
    _add_quadrature(p)
    _add_approx(p)
    _add_simulation(p, seed_required=False)

    sub.add_parser("table1", parents=[output], help="Planned sizes for the standard grid.")

    p = sub.add_parser("threshold", parents=[output],
                       help="Smallest n passing the numerical domination test.")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--n-max", type=int, default=10_000)

    return parser


def _rho(args: argparse.Namespace) -> float:
    if args.xi2 is not None:
        return noise_to_copula(args.xi2)
    rho: float = args.rho
    return rho


def _quadrature(args: argparse.Namespace) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol,
                            max_subdivisions=args.max_subdivisions)


def _approx(args: argparse.Namespace) -> ApproxConfig:
    return ApproxConfig(target_abs_error=args.target_error,
                        covariance_reading=args.covariance)


def dispatch(args: argparse.Namespace) -> List[ResultRecord]:
    command: str = args.command

    if command == "exact":
        spec = make_problem(args.n, args.m, args.alpha, _rho(args))
        return run_exact(spec, _quadrature(args))
    elif command == "approx":
        spec = make_problem(args.n, args.m, args.alpha, _rho(args))
        return run_approx(spec, args.seed, _approx(args))
    elif command == "bound":
        theta: Optional[float] = args.theta
        return run_bound(args.n, args.alpha, _rho(args), theta)
    elif command == "distfree":
        return run_distfree(args.n, args.m, args.alpha)
    elif command == "simulate":
        spec = make_problem(args.n, args.m, args.alpha, _rho(args))
        cfg = McConfig(replications=args.replications, seed=args.seed, workers=args.workers)
        return run_simulate(spec, cfg)
    elif command == "plan":
        return run_plan(args.alpha, _rho(args), args.delta)
    elif command == "sweep":
        base = make_problem(args.n, args.m, args.alpha, _rho(args))
        sweep = SweepSpec(vary=args.vary, values=parse_values(args.values), base=base)
        return run_sweep(sweep, args.method, args.seed, args.replications, args.workers,
                         _quadrature(args), _approx(args))
    elif command == "table1":
        return run_table1()
    elif command == "threshold":
        return run_threshold(args.theta, args.n_max)
    else:
        raise RuntimeError(f"Unexpected command {command!r}.")


def main(argv: Sequence[str]) -> int:
    parser = cli_parser()
    args = parse_cli(parser, argv)
    records = dispatch(args)
    sys.stdout.write(serialize_records(records, args.fmt))
    sys.stdout.flush()
    return 0


def cli() -> None:
    mainwrap(main)


if __name__ == "__main__": cli()  # noqa
