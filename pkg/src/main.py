"""
Main entry point for the command-line toolkit.

Every subcommand reads its input files, runs one solver and writes a JSON
result document {"command", "config", "result", "timing_ms"} to --output or
stdout. Exit codes: 0 success, 1 failure, 2 malformed input, 3 solver cap.
"""
import sys
import os
import argparse
import datetime
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

# Add the parent directory to sys.path to allow imports
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__) + '/..'))
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from utils.logger import logger, setup_logger
from utils.error_handlers import (
    EXIT_OK, TropRegError, ValidationError, exit_code_for, install_global_exception_handler, log_exceptions
)
from utils.performance import Timer
import config

from algebra import kleene_star
from applications import (
    build_design, feature_table, frob_residual, loglik, network_reduce, poly_fit, poly_residual,
    shortest_paths, simulate_orbit, sysid_fit, largest_component
)
from factorization import alternating_factorize, symmetric_factorize
from fileio import (
    format_matrix, read_csv_matrix, read_edge_list, read_matrix, read_timeseries_csv, read_vector,
    write_csv_rows, write_document, write_matrix, write_timeseries_csv
)
from models import Norm, RegressionProblem, RunConfig, TimeSeries, TropicalMatrix
from oracles import grid_oracle, pattern_census, star_oracle, verify_reduction
from regression import brute_force_exact, irsls, multistart_newton, solve_inf, steepest_descent

# (result document, primary array for --format csv)
CommandOutput = Tuple[Dict[str, Any], Optional[np.ndarray]]


def run_config_from(args: argparse.Namespace) -> RunConfig:
    """Validated solver settings from the parsed flags."""
    return RunConfig(
        seed=args.seed,
        starts=args.starts,
        mu=args.mu,
        stall=args.stall,
        max_iter=args.max_iter,
        tol=args.tol,
        lam=getattr(args, "lam", 0.0),
        rank=getattr(args, "rank", 2),
        restarts=args.restarts,
        tie_tol=args.tie_tol,
        threads=args.threads,
        output_format=args.format,
    )


def _parse_list(text: str, name: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.replace(",", " ").split()], dtype=float)
    except ValueError:
        raise ValidationError(f"--{name} must be a list of numbers, got {text!r}", field=name)


# Commands

def cmd_regress(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Tropical regression of a target vector on a matrix."""
    problem = RegressionProblem(TropicalMatrix.maxplus(read_matrix(args.matrix)), read_vector(args.target),
                                Norm(args.norm))
    if problem.norm is Norm.INF:
        solution = solve_inf(problem)
    elif args.method == "exact":
        solution = brute_force_exact(problem)
    elif args.method == "steepest":
        solution = steepest_descent(problem, solve_inf(problem).x, run.descent())
    else:
        solution = multistart_newton(problem, run.newton())
    if run.lam > 0:
        if problem.norm is Norm.INF:
            raise ValidationError("--lambda needs --norm two", field="lambda")
        solution = irsls(problem.A, problem.y, run.lam, solution.x, run.irsls())
    result = solution.to_dict()
    result["seed"] = run.seed
    return result, solution.x.reshape(1, -1)


def cmd_sysid(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Fit a max-plus system matrix to an observed orbit."""
    series = TimeSeries.from_rows(read_timeseries_csv(args.timeseries))
    fit = sysid_fit(series, run.lam, run.irsls(), sigma=args.sigma)
    return fit.to_dict(), fit.A_hat.entries


def cmd_residual(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Fit of a given system matrix on an orbit."""
    matrix = read_matrix(args.matrix)
    series = TimeSeries.from_rows(read_timeseries_csv(args.timeseries))
    result = {"frob_residual_sq": frob_residual(matrix, series)}
    if args.sigma is not None:
        result["loglik"] = loglik(matrix, series, args.sigma)
    return result, None


def cmd_factorize(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Min-plus low-rank factorization of a matrix."""
    C = TropicalMatrix.minplus(read_matrix(args.matrix))
    if args.symmetric:
        result = symmetric_factorize(C, run.rank, include_diagonal=not args.zero_diag, config=run.factorization())
    else:
        result = alternating_factorize(C, run.rank, run.factorization())
    return result.to_dict(), result.A.entries


def _features_path(args: argparse.Namespace) -> str:
    if args.features:
        return args.features
    if args.output:
        return os.path.splitext(args.output)[0] + ".features.csv"
    return "features.csv"


def cmd_netreduce(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Hub model of a network's shortest-path distances, plus a per-vertex feature CSV."""
    edges, n = read_edge_list(args.edges)
    edges, kept = largest_component(edges, n)
    distances = shortest_paths(edges, len(kept))
    result = network_reduce(distances, run.rank, run.factorization())

    rows = feature_table(result.A)
    for row in rows:
        row[0] = kept[row[0]]
    header = ["vertex"] + [f"a{k}" for k in range(run.rank)] + ["label"]
    path = _features_path(args)
    write_csv_rows(path, rows, header)
    logger.info(f"vertex features written to {path}")

    document = result.to_dict()
    document["vertices"] = kept
    document["features"] = path
    return document, result.A.entries


def cmd_polyfit(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Fit max-plus polynomial coefficients for fixed slopes."""
    points = read_csv_matrix(args.points)
    y = read_vector(args.targets)
    S = read_matrix(args.slopes)
    if S.shape[1] != points.shape[1] and S.shape[0] == points.shape[1]:
        S = S.T
    poly = poly_fit(points, y, S, run.newton())
    result = {
        "a": poly.a,
        "S": poly.S,
        "residual": poly_residual(poly, points, y),
        "design_shape": list(build_design(points, S).shape),
    }
    return result, poly.a.reshape(1, -1)


def cmd_simulate(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Sample an orbit of x(n+1) = M ⊗ x(n) + noise; writes a time-series CSV."""
    M = TropicalMatrix.maxplus(read_matrix(args.matrix))
    x0 = np.zeros(M.rows) if args.x0 is None else _parse_list(args.x0, "x0")
    series = simulate_orbit(M, x0, args.steps, args.sigma, run.seed)
    if args.output:
        write_timeseries_csv(args.output, series.X)
    else:
        sys.stdout.write("".join(",".join(format(v, ".17g") for v in row) + "\n" for row in series.X.T))
    return {"steps": series.steps, "d": series.d, "seed": run.seed}, None


def cmd_paths(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Shortest-path distance matrix of an edge list; writes a matrix file."""
    edges, n = read_edge_list(args.edges)
    distances = shortest_paths(edges, max(n, args.vertices or 0)).entries
    if args.output:
        write_matrix(args.output, distances, header=f"shortest paths of {args.edges}")
    else:
        sys.stdout.write(format_matrix(distances))
    return {"vertices": int(distances.shape[0])}, None


def cmd_verify(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    """Oracle reports for desk-scale verification runs."""
    if args.oracle == "census":
        return pattern_census(read_matrix(args.matrix)).to_dict(), None
    if args.oracle == "grid":
        problem = RegressionProblem(TropicalMatrix.maxplus(read_matrix(args.matrix)), read_vector(args.target),
                                    Norm(args.norm))
        x, value = grid_oracle(problem, (args.lo, args.hi), args.step, threads=run.threads)
        return {"x": x, "residual": value}, x.reshape(1, -1)
    if args.oracle == "star":
        B = TropicalMatrix.maxplus(read_matrix(args.matrix))
        star, oracle = kleene_star(B).entries, star_oracle(B).entries
        finite = np.isfinite(star) & np.isfinite(oracle)
        agree = bool(np.array_equal(np.isfinite(star), np.isfinite(oracle))
                     and np.allclose(star[finite], oracle[finite], atol=1e-9))
        return {"star": star, "agrees_with_bellman_ford": agree}, star
    checked, mismatches = verify_reduction(args.max_n, args.max_m)
    return {
        "instances": checked,
        "mismatches": [
            {"family": [sorted(s) for s in inst.family], "n": inst.n, "k": inst.k} for inst in mismatches
        ],
    }, None


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], CommandOutput]] = {
    "regress": cmd_regress,
    "sysid": cmd_sysid,
    "residual": cmd_residual,
    "factorize": cmd_factorize,
    "netreduce": cmd_netreduce,
    "polyfit": cmd_polyfit,
    "simulate": cmd_simulate,
    "paths": cmd_paths,
    "verify": cmd_verify,
}

# Commands whose main output is a file of their own rather than a result document
RAW_OUTPUT_COMMANDS = ("simulate", "paths")


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Returns:
        The parser with one subparser per command.
    """
    common = argparse.ArgumentParser(add_help=False)
    solver = common.add_argument_group("solver")
    solver.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    solver.add_argument("--starts", type=int, default=config.MULTISTART_STARTS)
    solver.add_argument("--mu", type=float, default=config.NEWTON_MU)
    solver.add_argument("--stall", type=int, default=config.STALL_WINDOW)
    solver.add_argument("--max-iter", type=int, default=config.MAX_ITER)
    solver.add_argument("--tol", type=float, default=config.TOL)
    solver.add_argument("--restarts", type=int, default=config.FACTOR_RESTARTS)
    solver.add_argument("--tie-tol", type=float, default=0.0)
    solver.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${config.THREADS_ENV_VAR} or CPU count)")
    out = common.add_argument_group("output")
    out.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
    out.add_argument("--format", choices=("json", "csv"), default="json")
    out.add_argument("--no-timing", action="store_true", help="write timing_ms as null")
    out.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(prog="tropreg", description=f"{config.APP_NAME} {config.APP_VERSION}")
    parser.add_argument("--version", action="version", version=f"{config.APP_NAME} {config.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("regress", parents=[common], help="solve min ‖A ⊗ x − y‖")
    p.add_argument("matrix")
    p.add_argument("target")
    p.add_argument("--norm", choices=("inf", "two"), default="two")
    p.add_argument("--method", choices=("newton", "steepest", "exact"), default="newton")
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)

    p = sub.add_parser("sysid", parents=[common], help="fit a max-plus system to a time series")
    p.add_argument("timeseries")
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=None)

    p = sub.add_parser("residual", parents=[common], help="fit of a given system matrix on a time series")
    p.add_argument("matrix")
    p.add_argument("timeseries")
    p.add_argument("--sigma", type=float, default=None)

    p = sub.add_parser("factorize", parents=[common], help="min-plus low-rank factorization")
    p.add_argument("matrix")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--zero-diag", action="store_true", help="ignore diagonal entries (symmetric only)")

    p = sub.add_parser("netreduce", parents=[common], help="hub model of a network")
    p.add_argument("edges")
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("--features", default=None, help="per-vertex feature CSV path")

    p = sub.add_parser("polyfit", parents=[common], help="fit max-plus polynomial coefficients")
    p.add_argument("points")
    p.add_argument("targets")
    p.add_argument("slopes")

    p = sub.add_parser("simulate", parents=[common], help="sample an orbit as a CSV time series")
    p.add_argument("matrix")
    p.add_argument("--x0", default=None, help="comma-separated initial state (default: zeros)")
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--sigma", type=float, default=0.0)

    p = sub.add_parser("paths", parents=[common], help="shortest-path distance matrix of an edge list")
    p.add_argument("edges")
    p.add_argument("--vertices", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="oracle reports")
    p.add_argument("oracle", choices=("census", "grid", "star", "setcover"))
    p.add_argument("matrix", nargs="?")
    p.add_argument("target", nargs="?")
    p.add_argument("--norm", choices=("inf", "two"), default="two")
    p.add_argument("--lo", type=float, default=-2.0)
    p.add_argument("--hi", type=float, default=2.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-m", type=int, default=4)
    return parser


def _check_verify_args(args: argparse.Namespace) -> None:
    needs = {"census": 1, "star": 1, "grid": 2, "setcover": 0}[args.oracle]
    given = sum(value is not None for value in (args.matrix, args.target))
    if given < needs:
        raise ValidationError(f"verify {args.oracle} needs {needs} input file(s)", field="matrix")


def write_output(args: argparse.Namespace, document: Dict[str, Any], primary: Optional[np.ndarray]) -> None:
    """Write the result document, or its primary array with --format csv."""
    if args.format == "csv":
        if primary is None:
            raise ValidationError(f"--format csv is not available for {args.command}", field="format")
        rows = np.atleast_2d(primary)
        if args.output:
            write_csv_rows(args.output, (list(map(float, row)) for row in rows))
        else:
            sys.stdout.write("".join(",".join(format(float(v), ".17g") for v in row) + "\n" for row in rows))
        return
    write_document(document, args.output)


@log_exceptions(logger)
def run_command(args: argparse.Namespace) -> int:
    """
    Run one parsed command.

    Returns:
        The exit code.
    """
    run = run_config_from(args)
    if args.command == "verify":
        _check_verify_args(args)
    with Timer(args.command) as timer:
        result, primary = COMMANDS[args.command](args, run)

    if args.command in RAW_OUTPUT_COMMANDS:
        logger.info(f"{args.command}: {result}")
        return EXIT_OK
    arguments = {
        key: value for key, value in sorted(vars(args).items())
        if key not in ("command", "output", "format", "no_timing", "log_level", "features")
    }
    document = {
        "command": args.command,
        "config": {**run.to_dict(), "arguments": arguments},
        "result": result,
        "timing_ms": None if args.no_timing else round(timer.elapsed_ms, 3),
    }
    write_output(args, document, primary)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main function.

    Args:
        argv: Command-line arguments without the program name.

    Returns:
        The process exit code.
    """
    install_global_exception_handler()
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logger(args.log_level)

    start_time = datetime.datetime.now()
    logger.info(f"{config.APP_NAME} {args.command} starting at {start_time}")
    try:
        return run_command(args)
    except (TropRegError, OSError, UnicodeDecodeError) as e:
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
