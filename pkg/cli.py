#!/usr/bin/env python
"""
isingkit command-line tool.

    python cli.py partition model.json --method exact
    python cli.py intervene model.json --set 1=1 --method cw --marginals
    python cli.py rank model.json --value 1 --metric l1
    python cli.py simulate --k-grid 10:100:10 --sigma-grid 1:10:1 --out records.csv
    python cli.py hoeffding --k 50 --sigma 1 --reps 10000

Result lines go to stdout; logs and errors go to stderr.
Exit codes: 0 success, 2 input error, 3 enumeration cap exceeded, 4 output error.
"""

import argparse
import math
import sys
from typing import Callable, List, Optional

from rich.console import Console
from rich.table import Table

from isingkit.common.errors import InputError, IsingKitError
from isingkit.common.logger import get_logger, init_logger
from isingkit.config import Settings, load_settings
from isingkit.graph.core import maximal_cliques
from isingkit.intervention.query import InferenceMethod, conditional_normalizer, marginals
from isingkit.intervention.ranking import ImpactMetric, rank_interventions
from isingkit.intervention.spec import InterventionSpec, parse_intervention
from isingkit.model.io import load_model
from isingkit.model.ising import IsingModel
from isingkit.partition.approximations import inner_approximation, mean_field_partition, pairwise_product
from isingkit.partition.base import PartitionEstimate, PartitionMethod
from isingkit.partition.clique_product import clique_normalizers, clique_product_partition
from isingkit.partition.enumeration import exact_partition
from isingkit.simulation.lab import SimulationConfig, error_experiment, hoeffding_check, small_k_exact_comparison, summarize
from isingkit.simulation.report import write_records_csv, write_summary_csv

console = Console(highlight=False, markup=False, emoji=False, soft_wrap=True)
err_console = Console(stderr=True, highlight=False, markup=False, emoji=False, soft_wrap=True)

log = get_logger("cli")

PARTITION_METHODS = ["exact", "inner", "pairwise", "curie-weiss", "clique-exact", "mean-field"]


def fmt(value: float) -> str:
    return repr(float(value))


def parse_grid(text: str, kind: Callable = float) -> List:
    """
    `a:b:step` (both ends inclusive when step divides the range), `a:b`
    (step 1), a single value, or a comma list.
    """
    try:
        if ":" not in text:
            return [kind(v) for v in text.split(",") if v.strip()]
        parts = [float(p) for p in text.split(":")]
    except ValueError:
        raise InputError(f"malformed grid {text!r}") from None

    if len(parts) == 2:
        parts.append(1.0)
    if len(parts) != 3:
        raise InputError(f"grid must be a:b:step, got {text!r}")
    start, stop, step = parts
    if step <= 0 or stop < start:
        raise InputError(f"grid {text!r} needs step > 0 and a <= b")

    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [round(start + i * step, 12) for i in range(count)]
    if kind is int:
        if any(v != int(v) for v in values):
            raise InputError(f"grid {text!r} must produce integers")
        return [int(v) for v in values]
    return [kind(v) for v in values]


def result_line(prefix: str, estimate: PartitionEstimate) -> str:
    return f"{prefix} logZ={fmt(estimate.log_value)} Z={fmt(estimate.value)}"


def compute_partition(m: IsingModel, method: str, settings: Settings, cap: int, workers: int) -> PartitionEstimate:
    if method == "exact":
        return exact_partition(m, cap=cap, workers=workers, block_bits=settings.partition.block_bits)
    if method == "inner":
        return inner_approximation(m)
    if method == "pairwise":
        return pairwise_product(m)
    if method == "mean-field":
        return mean_field_partition(m)
    per_clique = PartitionMethod.EXACT if method == "clique-exact" else PartitionMethod.CURIE_WEISS
    return clique_product_partition(m, maximal_cliques(m.graph), InterventionSpec(), per_clique, cap=cap)


def cmd_partition(args, settings: Settings) -> int:
    m = load_model(args.model)
    estimate = compute_partition(m, args.method, settings, args.cap, args.workers)
    tag = {
        "curie-weiss": PartitionMethod.CURIE_WEISS.value,
        "clique-exact": PartitionMethod.CLIQUE_PRODUCT.value,
    }.get(args.method, estimate.method.value)
    console.print(result_line(f"method={tag}", estimate))
    return 0


def cmd_intervene(args, settings: Settings) -> int:
    m = load_model(args.model)
    iv = parse_intervention(args.set)
    iv.validate_for(m.n)
    method = InferenceMethod.parse(args.method)

    estimate = conditional_normalizer(m, iv, method, cap=args.cap, workers=args.workers)
    console.print(result_line(f"normalizer method={method.value}", estimate))

    per_clique = PartitionMethod.EXACT if method is InferenceMethod.EXACT else PartitionMethod.CURIE_WEISS
    for c in clique_normalizers(m, maximal_cliques(m.graph), iv, per_clique, cap=args.cap):
        nodes = ",".join(str(v) for v in c.clique)
        free = ",".join(str(v) for v in c.free)
        console.print(f"clique nodes={nodes} free={free} logZ={fmt(c.log_value)} Z={fmt(c.value)}")

    if args.marginals:
        table = marginals(m, iv, method, cap=args.cap, workers=args.workers)
        for node, p in zip(table.nodes, table.probabilities):
            console.print(f"marginal node={node} p={fmt(p)}")
    return 0


def cmd_rank(args, settings: Settings) -> int:
    m = load_model(args.model)
    metric = ImpactMetric.parse(args.metric)
    method = InferenceMethod.parse(args.method)
    ranking = rank_interventions(m, args.value, metric, method, cap=args.cap, workers=args.workers)

    if args.table:
        table = Table(title=f"do(x_j = {args.value}) ranked by {metric.value}")
        table.add_column("rank", justify="right")
        table.add_column("node", justify="right")
        table.add_column("impact", justify="right")
        for entry in ranking:
            table.add_row(str(entry.rank), str(entry.node), f"{entry.impact:.6g}")
        err_console.print(table)

    for entry in ranking:
        console.print(f"rank={entry.rank} node={entry.node} value={entry.value} impact={fmt(entry.impact)}")
    return 0


def cmd_simulate(args, settings: Settings) -> int:
    cfg = SimulationConfig.from_settings(
        settings.simulation,
        clique_sizes=parse_grid(args.k_grid, int) if args.k_grid else None,
        sigmas=parse_grid(args.sigma_grid, float) if args.sigma_grid else None,
        reps=args.reps,
        seed=args.seed,
        theta0=args.theta0,
        theta1=args.theta1,
        nu=args.nu,
        workers=args.workers,
    )
    if args.exact:
        records = small_k_exact_comparison(cfg, cap=args.cap)
    else:
        records = error_experiment(cfg)

    text = write_records_csv(records, args.out)
    if args.out is None:
        sys.stdout.write(text)
    if args.summary:
        write_summary_csv(summarize(records), args.summary)
    return 0


def cmd_hoeffding(args, settings: Settings) -> int:
    sim = settings.simulation
    report = hoeffding_check(
        k=args.k,
        sigma=args.sigma,
        delta=sim.delta if args.delta is None else args.delta,
        reps=args.reps,
        seed=sim.seed if args.seed is None else args.seed,
        theta1=sim.theta1 if args.theta1 is None else args.theta1,
    )
    console.print(
        f"hoeffding k={report.k} sigma={fmt(report.sigma)} delta={fmt(report.delta)} reps={report.n_reps} "
        f"t_bound={fmt(report.t_bound)} violation_rate={fmt(report.empirical_violation_rate)} "
        f"t_stated={fmt(report.t_stated)} stated_violation_rate={fmt(report.stated_violation_rate)} "
        f"slack={fmt(report.slack)} passed={str(report.passed).lower()}"
    )
    return 0


COMMANDS = {
    "partition": cmd_partition,
    "intervene": cmd_intervene,
    "rank": cmd_rank,
    "simulate": cmd_simulate,
    "hoeffding": cmd_hoeffding,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Ising model partition functions, interventions and the Curie-Weiss clique approximation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--config", help="TOML settings file")
    parser.add_argument("--log-level", help="DEBUG/INFO/WARNING/ERROR")
    parser.add_argument("--log-file", help="also log to this file")
    parser.add_argument("--log-component", help="only log records of this component, e.g. partition.enumeration")
    parser.add_argument("--workers", type=int, help="parallel workers")

    subparsers = parser.add_subparsers(dest="command", help="commands")

    # partition
    p = subparsers.add_parser("partition", help="log Z of a model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--method", choices=PARTITION_METHODS, default="exact")
    p.add_argument("--cap", type=int, help="max nodes for exact enumeration")

    # intervene
    p = subparsers.add_parser("intervene", help="conditional normaliser after do(x_A = x_A*)")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--set", default="", help='clamped nodes, e.g. "1=1,4=0"')
    p.add_argument("--method", default="exact", help="exact or cw")
    p.add_argument("--marginals", action="store_true", help="print P(x_i = 1) for free nodes")
    p.add_argument("--cap", type=int, help="max free nodes for exact enumeration")

    # rank
    p = subparsers.add_parser("rank", help="rank single-node interventions by impact")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--value", type=int, choices=[0, 1], default=1)
    p.add_argument("--metric", default="l1", help="l1 or esum")
    p.add_argument("--method", default="exact", help="exact or cw")
    p.add_argument("--table", action="store_true", help="also render a table on stderr")
    p.add_argument("--cap", type=int, help="max free nodes for exact enumeration")

    # simulate
    p = subparsers.add_parser("simulate", help="Curie-Weiss approximation error study, CSV output")
    p.add_argument("--k-grid", help="clique sizes, a:b:step")
    p.add_argument("--sigma-grid", help="sub-Gaussian parameters, a:b:step")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--theta0", type=float)
    p.add_argument("--theta1", type=float)
    p.add_argument("--nu", type=float, help="neighbour count; default k-1")
    p.add_argument("--out", help="records CSV; stdout when omitted")
    p.add_argument("--summary", help="per-cell summary CSV")
    p.add_argument("--exact", action="store_true", help="compare with exact enumeration (small k)")
    p.add_argument("--cap", type=int, help="max k for --exact")

    # hoeffding
    p = subparsers.add_parser("hoeffding", help="Monte Carlo coverage of the Hoeffding radius")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--delta", type=float)
    p.add_argument("--reps", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.add_argument("--theta1", type=float)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return 0

    try:
        settings = load_settings(args.config)
        init_logger(
            log_level=args.log_level or settings.logging.level,
            log_file=args.log_file or settings.logging.file,
            component=args.log_component or settings.logging.component,
        )
        if args.workers is None:
            args.workers = settings.partition.workers
        if args.workers < 1:
            raise InputError(f"--workers must be >= 1, got {args.workers}")
        if getattr(args, "cap", None) is None:
            args.cap = settings.partition.enumeration_cap
        return COMMANDS[args.command](args, settings)
    except IsingKitError as exc:
        log.opt(exception=exc).error("{} failed", args.command)
        err_console.print(f"error: {exc}")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
