"""HOTS unified CLI entry point"""

import argparse
import csv
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .coefficients.matrix import tau1_matrix
from .coefficients.registry import compute_many
from .core.config import Config, load_config
from .core.errors import InvalidInputError, InvariantViolation
from .experiments.pipeline import ALIASES, ExperimentConfig, ExperimentPipeline
from .graph.loader import Graph, erdos_renyi, largest_connected_component, load_edge_list
from .graph.pagerank import TrianglePageRank
from .solvers.certificate import convergence_certificate
from .solvers.pagerank import mlpr_fixed_point
from .solvers.pair_chain import pair_chain_stationary
from .solvers.perturbation import perturbation_bound
from .solvers.power import alternate_pm, hopm, optimal_shift, shifted_pm
from .solvers.vrrw import ScheduleC, simulate_spacey_mc, vrrw_iterate
from .tensors.builtins import BUILTINS, get_builtin
from .tensors.checks import apply_bilinear, validate_stochastic
from .tensors.dense import random_stochastic
from .tensors.io import read_tensor

logger = logging.getLogger(__name__)

COEFFICIENT_NAMES = ["tau1", "TL", "TR", "T", "TH", "kappa", "delta", "delta-bf", "gamma", "theta"]
SIGMA_ALIASES = {"s1": "max", "s2": "min", "s3": "avg", "max": "max", "min": "min", "avg": "avg"}
SOLVERS = ["hopm", "alt", "vrrw", "mlpr", "shifted", "pairchain", "spacey"]


def _first_set(*values):
    """First value that is not None (0 and 0.0 are kept)"""
    for value in values:
        if value is not None:
            return value
    return None


def _global(args, name: str, default=None):
    return _first_set(getattr(args, name, None), default)


def _config(args) -> Config:
    return load_config(args.config, getattr(args, "_overrides", None))


def _load_tensor(args, config: Config):
    sources = [s for s in (args.tensor, args.builtin, args.random) if s is not None]
    if len(sources) != 1:
        raise InvalidInputError("pass exactly one of --tensor, --builtin, --random")
    if args.tensor is not None:
        return read_tensor(args.tensor, dense_limit=config.coefficients.dense_limit)
    if args.builtin is not None:
        return get_builtin(args.builtin)
    return random_stochastic(args.random, _global(args, "seed", config.experiments.seed))


def _load_graph(args, config: Config) -> Graph:
    if (args.edges is None) == (args.random_graph is None):
        raise InvalidInputError("pass exactly one of --edges, --random-graph")
    if args.edges is not None:
        index_base = _first_set(args.index_base, config.graph.index_base)
        graph = load_edge_list(args.edges, index_base if index_base == "auto" else int(index_base))
    else:
        try:
            n_text, p_text = args.random_graph.split(":")
            n, p = int(n_text), float(p_text)
        except ValueError:
            raise InvalidInputError(f"--random-graph expects N:P, got {args.random_graph!r}") from None
        graph = erdos_renyi(n, p, _global(args, "seed", config.experiments.seed))
    if args.lcc or config.graph.lcc:
        graph, keep = largest_connected_component(graph)
        logger.info(f"Largest connected component: {graph.n} of {keep.size} nodes")
    return graph


def _emit_json(payload: Any, args) -> None:
    text = json.dumps(payload, indent=2)
    out = _global(args, "out")
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"Wrote {out}")
    else:
        print(text)


def _emit_rows(rows: List[Dict[str, Any]], columns: Sequence[str], args) -> None:
    out = _global(args, "out")
    f = open(out, "w", encoding="utf-8", newline="") if out else sys.stdout
    try:
        writer = csv.DictWriter(f, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: f"{v:.17g}" if isinstance(v, float) else v for k, v in row.items()})
    finally:
        if out:
            f.close()
            logger.info(f"Wrote {out}")


def cmd_validate(args):
    config = _config(args)
    T = _load_tensor(args, config)
    report = validate_stochastic(T, tol=config.tensors.validation_tol)
    payload = report.to_dict()
    if report:
        u = np.full(T.n, 1.0 / T.n)
        apply_bilinear(T, u, u, closure_tol=config.tensors.closure_tol)
    _emit_json(payload, args)
    if not report:
        raise InvalidInputError(f"tensor is not stochastic (worst deviation {report.worst_deviation:.3e})")


def cmd_coeff(args):
    config = _config(args)
    if args.matrix is not None:
        M = np.loadtxt(args.matrix, ndmin=2)
        _emit_json([{"name": "tau1", "value": tau1_matrix(M), "witness": None}], args)
        return
    T = _load_tensor(args, config)
    names = args.which or ["T"]
    if "tau1" in names:
        raise InvalidInputError("tau1 needs --matrix")
    sigma = None
    if args.sigma is not None:
        sigma = SIGMA_ALIASES.get(args.sigma)
        if sigma is None:
            sigma = np.loadtxt(args.sigma, ndmin=1)
    reports = compute_many(names, T, sigma, config.coefficients.subset_limit)
    _emit_json([r.to_dict() for r in reports], args)


def cmd_solve(args):
    config = _config(args)
    cfg = config.solvers
    T = _load_tensor(args, config)
    tol = _first_set(args.tol, cfg.tol)
    maxit = _first_set(args.maxit, cfg.maxit)
    left_weight = _first_set(args.left_weight, cfg.left_weight)
    method = args.method

    if method == "hopm":
        result = hopm(T, tol=tol, maxit=maxit)
    elif method == "alt":
        result = alternate_pm(T, tol=tol, maxit=maxit)
    elif method == "vrrw":
        schedule = ScheduleC.parse(_first_set(args.schedule, cfg.schedule))
        result = vrrw_iterate(T, schedule=schedule, tol=tol, maxit=maxit)
    elif method == "mlpr":
        alpha = _first_set(args.alpha, config.graph.alpha)
        result = mlpr_fixed_point(T, alpha, tol=tol, maxit=maxit)
    elif method == "shifted":
        if args.sigma is None or args.sigma == "opt":
            optimum = optimal_shift(T, left_weight, cfg.grid_points, cfg.refine_tol)
            logger.info(f"Optimal shift sigma*={optimum.sigma:.6f} with T(P_sigma)={optimum.value:.6f}")
            sigma = optimum.sigma
        else:
            try:
                sigma = float(args.sigma)
            except ValueError:
                raise InvalidInputError(f"--sigma expects a number in (0, 1] or 'opt', got {args.sigma!r}") from None
        result = shifted_pm(T, sigma, left_weight, tol=tol, maxit=maxit)
    elif method == "pairchain":
        result = pair_chain_stationary(T, tol=_first_set(args.tol, 1e-12), maxit=maxit)
    else:
        seed = _global(args, "seed", config.experiments.seed)
        result = simulate_spacey_mc(T, steps=args.steps, seed=seed)
    _emit_json(result.to_dict(), args)


def cmd_perturb(args):
    config = _config(args)
    T = _load_tensor(args, config)
    other = read_tensor(args.other, dense_limit=config.coefficients.dense_limit)
    report = perturbation_bound(T, other, tol=_first_set(args.tol, 1e-12), maxit=config.solvers.maxit)
    _emit_json(report.to_dict(), args)


def cmd_certify(args):
    config = _config(args)
    cfg = config.solvers
    T = _load_tensor(args, config)
    summary = convergence_certificate(
        T,
        left_weight=_first_set(args.left_weight, cfg.left_weight),
        grid_points=cfg.grid_points,
        refine_tol=cfg.refine_tol,
        dense_limit=config.coefficients.dense_limit,
    )
    _emit_json(summary.to_dict(), args)


def cmd_graph(args):
    config = _config(args)
    graph = _load_graph(args, config)
    if args.action == "stats":
        model = TrianglePageRank(graph)
        payload = model.stats.to_dict()
        payload.update(edges=graph.m, norm_difference=model.norm_difference)
        _emit_json(payload, args)
        return

    alpha = _first_set(args.alpha, config.graph.alpha)
    beta = _first_set(args.beta, config.graph.beta)
    tol = _first_set(args.tol, config.solvers.tol)
    maxit = _first_set(args.maxit, config.solvers.maxit)
    result = TrianglePageRank(graph).solve(alpha, beta, tol=tol, maxit=maxit)
    if _global(args, "format", config.experiments.format) == "csv":
        _emit_rows(result.rows(), ["node", "x", "z", "x_minus_z"], args)
    else:
        _emit_json(result.to_dict(), args)


def cmd_experiment(args):
    config = _config(args)
    settings = config.experiments
    tensor = None
    if any(s is not None for s in (args.tensor, args.builtin, args.random)):
        tensor = _load_tensor(args, config)
    graph = None
    if args.edges is not None or args.random_graph is not None:
        graph = _load_graph(args, config)
    exp_config = ExperimentConfig.from_settings(
        args.name,
        settings,
        seed=_global(args, "seed"),
        output=_global(args, "out"),
        format=_global(args, "format"),
        threads=_global(args, "threads"),
        samples=args.samples,
        n_min=args.n_min,
        n_max=args.n_max,
        alpha_step=args.alpha_step,
        beta_step=args.beta_step,
        sigma_step=args.sigma_step,
        left_weight=config.solvers.left_weight,
        tol=config.solvers.tol,
        maxit=config.solvers.maxit,
        tensor=tensor,
        graph=graph,
    )
    pipeline = ExperimentPipeline(exp_config, output_dir=settings.output_dir, verbose=not args.quiet)
    pipeline.run()


def _tensor_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_argument_group("tensor input" + ("" if required else " (fig2, fig5)"))
    group.add_argument("--tensor", "-t", help="Tensor text file")
    group.add_argument("--builtin", choices=sorted(BUILTINS), help="Built-in tensor")
    group.add_argument("--random", type=int, metavar="N", help="Random n x n x n stochastic tensor")


def _graph_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("graph input")
    group.add_argument("--edges", "-e", help="Edge list file")
    group.add_argument("--random-graph", metavar="N:P", help="Erdos-Renyi graph G(N, P)")
    group.add_argument("--index-base", choices=["auto", "0", "1"], help="Node numbering in the edge list")
    group.add_argument("--lcc", action="store_true", help="Restrict to the largest connected component")


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset by the subparser
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Master random seed")
    shared.add_argument("--out", "-o", default=argparse.SUPPRESS, help="Output file (stdout when omitted)")
    shared.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS, help="Output format")
    shared.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="Worker threads")

    parser = argparse.ArgumentParser(
        prog="hots", description="Higher-order stochastic tensors", parents=[shared]
    )
    parser.add_argument("-c", "--config", default=None, help="Configuration file path")
    parser.add_argument("--verbose", "-v", action="store_true", help="Verbose output")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_val = subparsers.add_parser("validate", help="Check first-mode stochasticity", parents=[shared])
    _tensor_options(p_val)
    p_val.set_defaults(func=cmd_validate)

    p_coeff = subparsers.add_parser("coeff", help="Ergodicity coefficients", parents=[shared])
    _tensor_options(p_coeff)
    p_coeff.add_argument("--matrix", help="Column-stochastic matrix file for tau1")
    p_coeff.add_argument("--which", nargs="+", choices=COEFFICIENT_NAMES, help="Coefficients to compute")
    p_coeff.add_argument("--sigma", help="theta sigma vector: s1|s2|s3 (max|min|avg) or a file")
    p_coeff.set_defaults(func=cmd_coeff)

    p_solve = subparsers.add_parser("solve", help="Z-eigenvector solvers", parents=[shared])
    p_solve.add_argument("method", choices=SOLVERS)
    _tensor_options(p_solve)
    p_solve.add_argument("--tol", type=float, help="Stopping tolerance")
    p_solve.add_argument("--maxit", type=int, help="Maximum iterations")
    p_solve.add_argument("--alpha", type=float, help="mlpr damping")
    p_solve.add_argument("--sigma", help="shifted: shift in (0, 1] or 'opt'")
    p_solve.add_argument("--schedule", help="vrrw: harmonic | constant:<c> | custom:<c1>,<c2>,...")
    p_solve.add_argument("--left-weight", type=float, help="Weight of E^L in the shift identity")
    p_solve.add_argument("--steps", type=int, default=100000, help="spacey: walk length")
    p_solve.set_defaults(func=cmd_solve)

    p_pert = subparsers.add_parser("perturb", help="Perturbation bounds for two tensors", parents=[shared])
    _tensor_options(p_pert)
    p_pert.add_argument("--other", required=True, help="Perturbed tensor file")
    p_pert.add_argument("--tol", type=float, help="Solver tolerance")
    p_pert.set_defaults(func=cmd_perturb)

    p_cert = subparsers.add_parser("certify", help="Uniqueness and convergence certificates", parents=[shared])
    _tensor_options(p_cert)
    p_cert.add_argument("--left-weight", type=float, help="Weight of E^L in the shift identity")
    p_cert.set_defaults(func=cmd_certify)

    p_graph = subparsers.add_parser("graph", help="Triangle random walks on graphs", parents=[shared])
    p_graph.add_argument("action", choices=["mlpr", "stats"])
    _graph_options(p_graph)
    p_graph.add_argument("--alpha", type=float, help="Damping")
    p_graph.add_argument("--beta", type=float, help="Weight of the triangle tensor")
    p_graph.add_argument("--tol", type=float, help="Stopping tolerance")
    p_graph.add_argument("--maxit", type=int, help="Maximum iterations")
    p_graph.set_defaults(func=cmd_graph)

    p_exp = subparsers.add_parser("experiment", help="Figure data", parents=[shared])
    p_exp.add_argument("name", choices=sorted(ALIASES))
    _tensor_options(p_exp, required=False)
    _graph_options(p_exp)
    p_exp.add_argument("--samples", type=int, help="fig1: number of random tensors")
    p_exp.add_argument("--n-min", type=int, help="fig1: smallest n")
    p_exp.add_argument("--n-max", type=int, help="fig1: largest n")
    p_exp.add_argument("--alpha-step", type=float, help="alpha grid spacing")
    p_exp.add_argument("--beta-step", type=float, help="fig3: beta grid spacing")
    p_exp.add_argument("--sigma-step", type=float, help="fig5: sigma grid spacing")
    p_exp.add_argument("--quiet", "-q", action="store_true", help="No banner or progress bar")
    p_exp.set_defaults(func=cmd_experiment)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        level = logging.DEBUG if args.verbose else _config(args).logging.level
    except (FileNotFoundError, ValueError) as e:
        print(f"hots: {e}", file=sys.stderr)
        return 1
    logging.basicConfig(level=level, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    try:
        args.func(args)
        return 0
    except InvariantViolation as e:
        logging.error(f"Invariant violated: {e}", exc_info=args.verbose)
        return 2
    except (InvalidInputError, FileNotFoundError, ValueError, OSError) as e:
        logging.error(f"{args.command} failed: {e}", exc_info=args.verbose)
        return 1


if __name__ == "__main__":
    sys.exit(main())
