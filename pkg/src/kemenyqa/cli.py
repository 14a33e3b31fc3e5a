import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from rich.console import Console

from .core.baselines import brute_force, kwiksort, kwiksort_reachable
from .core.benchmark import compare_methods
from .core.datagen import FIXTURES, MODES, GenSpec, generate
from .core.n2_encoding import build_n2_qubo
from .core.pairwise import accuracy, bias_of, build_comparison, num_pairs, represent
from .core.qubo import build_iterative_qubo, select_penalty
from .core.ranking import Dataset, ListKind, Ranking, WeightScheme, cumulative_kt, normalized_kt
from .core.votes import dataset_digest, format_votes, read_votes, write_votes
from .errors import KemenyError, PairRemovalError
from .samplers import ExactSampler, SaParams, SimulatedAnnealingSampler
from .solvers import STRATEGIES, CycleLoop, IterOptions, resolve_parity, solve_base, solve_iterative, solve_pair_removal
from .utils.config import Config
from .utils.logging import setup_logging
from .utils.parallel import ParallelProcessor
from .utils.seeds import derive_seed
from .utils.report import (
    RunReport, comparison_csv, comparison_table, dataset_summary, oracle_comparison, solve_csv, summary_table,
    validate_report,
)
from .visualization.trace_view import TraceVisualizer

# Reports go to stdout, so console chatter goes to stderr
console = Console(stderr=True)
logger = logging.getLogger(__name__)

METHODS = ("base", "iterative", "pair-removal", "kwiksort", "brute-force", "n2")
SAMPLERS = ("auto", "exact", "sa")


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("votes", type=str, help="Votes file")
    parser.add_argument(
        "--list-kind",
        choices=[k.value for k in ListKind],
        default=ListKind.COMPLETE.value,
        help="How votes relate to the full candidate set",
    )
    parser.add_argument(
        "--pair-weight",
        type=str,
        default="uniform",
        help="Pair weight scheme: uniform, position:p or distance",
    )


def _add_sampler_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sampler", choices=SAMPLERS, default="auto", help="QUBO sampler backend")
    parser.add_argument("--reads", type=int, help="Simulated annealing reads")
    parser.add_argument("--sweeps", type=int, help="Simulated annealing sweeps per read")
    parser.add_argument("--seed", type=int, default=0, help="Master random seed")
    parser.add_argument("--epsilon", type=float, help="Margin added to penalty bounds")


def _add_iterative_args(parser: argparse.ArgumentParser, stop_default: Optional[int] = None) -> None:
    parser.add_argument("--parity", choices=("auto", "odd", "even"), default="auto",
                        help="Cycle rule for the majority matrix")
    parser.add_argument("--stop-after-updates", type=int, default=stop_default,
                        help="Stop after this many ledger updates (approximate mode)")
    parser.add_argument("--double-check", type=int, default=1,
                        help="Sampler runs per iteration whose cycle sets are intersected")
    parser.add_argument("--prune-k", type=int, help="Prune initial cycles covered at least k times")
    parser.add_argument("--initial-penalty", choices=("minimal", "bias-scaled"),
                        help="Starting penalty for newly penalized cycles")


def _add_common_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", type=str, help="Write the report to this file")
    parser.add_argument("--config", type=str, help="JSON configuration file")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--log-file", type=str, help="Also log to logs/<name>")


def build_parser() -> argparse.ArgumentParser:
    """Parser with the generate, solve, compare and dump-qubo commands."""
    parser = argparse.ArgumentParser(
        prog="kemenyqa",
        description="Kemeny rank aggregation through QUBO encodings",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("generate", help="Write a seeded dataset or a fixture")
    gen.add_argument("--mode", choices=MODES, default="synthetic")
    gen.add_argument("--n", type=int, help="Number of candidates")
    gen.add_argument("--votes", type=int, default=11, help="Number of votes")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--min-sublists", type=int, default=3)
    gen.add_argument("--list-kind", choices=[k.value for k in ListKind], default=ListKind.COMPLETE.value)
    gen.add_argument("--k-min", type=int, default=1, help="Shortest truncated vote")
    gen.add_argument("--max-list-weight", type=int, default=1, help="Largest integer vote weight")
    gen.add_argument("--fixture", choices=sorted(FIXTURES), help="Write an embedded dataset instead")
    gen.add_argument("-o", "--output", type=str, help="Votes file to write (stdout if omitted)")
    gen.add_argument("-v", "--verbose", action="store_true")

    solve = commands.add_parser("solve", help="Aggregate the votes in a file")
    _add_dataset_args(solve)
    solve.add_argument("-m", "--method", choices=METHODS, default="iterative")
    _add_sampler_args(solve)
    _add_iterative_args(solve)
    solve.add_argument("--penalty-mode", choices=("minmax", "iterative"), default="iterative",
                       help="Penalties used by pair removal; base always uses minmax, iterative the ledger")
    solve.add_argument("--pr-strategy", choices=STRATEGIES, help="Pair-removal selection strategy")
    solve.add_argument("--pr-count", type=int, help="Number of pairs to remove")
    solve.add_argument("--pr-min-gap", type=int, help="Smallest position gap for promega")
    solve.add_argument("--oracle", action="store_true", help="Compare against brute force")
    solve.add_argument("--trials", type=int, default=1, help="KwikSort trials")
    solve.add_argument("--format", choices=("json", "csv"), help="Report format")
    solve.add_argument("--show-trace", action="store_true", help="Print the iteration trace")
    _add_common_args(solve)

    compare = commands.add_parser("compare", help="Iterative method against KwikSort")
    _add_dataset_args(compare)
    _add_sampler_args(compare)
    _add_iterative_args(compare, stop_default=4)
    compare.add_argument("--runs", type=int, default=5, help="Iterative method runs")
    compare.add_argument("--trials", type=int, default=10000, help="KwikSort trials")
    compare.add_argument("--format", choices=("json", "csv"), default="csv")
    _add_common_args(compare)

    dump = commands.add_parser("dump-qubo", help="Write the QUBO a method would sample")
    _add_dataset_args(dump)
    dump.add_argument("-m", "--method", choices=("base", "iterative", "n2"), default="iterative")
    dump.add_argument("--parity", choices=("auto", "odd", "even"), default="auto")
    dump.add_argument("--epsilon", type=float)
    _add_common_args(dump)
    return parser


def parse_args(args=None) -> argparse.Namespace:
    """Parse command line arguments, rejecting incompatible combinations."""
    parser = build_parser()
    parsed = parser.parse_args(args)
    if parsed.command == "generate":
        if parsed.fixture is None and parsed.n is None:
            parser.error("generate needs --n or --fixture")
    if parsed.command in ("solve", "dump-qubo") and parsed.method == "n2":
        if parsed.list_kind != ListKind.COMPLETE.value or parsed.pair_weight != "uniform":
            parser.error("the n2 encoding only supports complete, uniformly weighted votes")
    if parsed.command == "solve" and parsed.method == "pair-removal":
        if parsed.pr_strategy is None or parsed.pr_count is None:
            parser.error("pair-removal needs --pr-strategy and --pr-count")
    for name in ("stop_after_updates", "double_check", "prune_k", "trials", "runs", "reads", "sweeps"):
        value = getattr(parsed, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name.replace('_', '-')} must be at least 1")
    if getattr(parsed, "pr_count", None) is not None and parsed.pr_count < 0:
        parser.error("--pr-count must be nonnegative")
    return parsed


def load_config(args: argparse.Namespace) -> Config:
    """Config file values, overridden by explicit flags."""
    config = Config.from_file(Path(args.config)) if getattr(args, "config", None) else Config()
    config.update(
        reads=getattr(args, "reads", None),
        sweeps=getattr(args, "sweeps", None),
        epsilon=getattr(args, "epsilon", None),
        pr_min_gap=getattr(args, "pr_min_gap", None),
        output_format=getattr(args, "format", None),
    )
    return config


def load_dataset(args: argparse.Namespace) -> Dataset:
    return read_votes(Path(args.votes), ListKind(args.list_kind), WeightScheme.parse(args.pair_weight))


def make_sampler(name: str, config: Config, num_vars: int, seed: Optional[int],
                 processor: ParallelProcessor):
    """Exact enumeration when the QUBO fits (or is requested), annealing otherwise."""
    cap = config.get_exact_cap()
    if name == "auto":
        name = "exact" if num_vars <= cap else "sa"
        logger.info("Using %s sampler for %d variables", name, num_vars)
    if name == "exact":
        return ExactSampler(cap)
    params = SaParams(config.reads, config.sweeps, seed=seed, batch_size=config.batch_size)
    return SimulatedAnnealingSampler(params, processor)


def iter_options(args: argparse.Namespace, config: Config) -> IterOptions:
    return IterOptions(
        max_cycle_updates=args.stop_after_updates,
        parity=None if args.parity == "auto" else args.parity,
        initial_penalty=args.initial_penalty,
        double_check=args.double_check,
        prune_k=args.prune_k,
        epsilon=config.epsilon,
        seed=args.seed,
        max_iterations=config.max_iterations,
        max_restarts=config.max_restarts,
        min_gap=config.pr_min_gap,
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        console.print(f"[green]Report written to: {output}[/green]")
    else:
        sys.stdout.write(text)


def run_method(args: argparse.Namespace, ds: Dataset, config: Config,
               processor: ParallelProcessor) -> Dict[str, Any]:
    """Run the requested method; the result dict always carries ``ranking`` and ``cumulative_kt``."""
    method = args.method
    if method == "brute-force":
        oracle = brute_force(ds, config.brute_force_cap, processor)
        best = oracle.sorted_optima()[0]
        return {**oracle.to_dict(), "ranking": list(best.order), "cumulative_kt": oracle.min_kt}

    if method == "kwiksort":
        pm = build_comparison(ds)
        rankings = [kwiksort(pm, seed=derive_seed(args.seed, t)) for t in range(args.trials)]
        kts = [cumulative_kt(ds, r) for r in rankings]
        best = min(range(len(kts)), key=lambda t: (kts[t], t))
        result = {
            "ranking": list(rankings[best].order),
            "cumulative_kt": kts[best],
            "normalized_kt": normalized_kt(ds, rankings[best]),
            "trial_kts": kts,
        }
        if ds.n <= config.reachable_cap:
            reachable = kwiksort_reachable(pm, config.reachable_cap)
            result["reachable_min_kt"] = min(cumulative_kt(ds, r) for r in reachable)
        return result

    if method == "n2":
        encoding = build_n2_qubo(build_comparison(ds), len(ds.votes))
        sampler = make_sampler(args.sampler, config, encoding.qubo.num_vars, args.seed, processor)
        samples = sampler.sample(encoding.qubo, seed=args.seed)
        record = samples.best()
        ranking = encoding.decode(record.config)
        return {
            "ranking": list(ranking.order),
            "cumulative_kt": cumulative_kt(ds, ranking),
            "normalized_kt": normalized_kt(ds, ranking),
            "energy": record.energy,
            "num_occ": record.num_occ,
            "penalty": encoding.penalty,
        }

    sampler = make_sampler(args.sampler, config, num_pairs(ds.n), args.seed, processor)
    if method == "base":
        parity = None if args.parity == "auto" else args.parity
        solution = solve_base(ds, sampler, config.epsilon, args.seed, parity)
        parity = resolve_parity(ds, parity)
        penalty = select_penalty(bias_of(build_comparison(ds)), ds.total_weight, parity, config.epsilon)
        extra = {"penalty": penalty}
    elif method == "iterative":
        solution = solve_iterative(ds, sampler, iter_options(args, config))
        extra = {}
    else:
        try:
            solution = solve_pair_removal(
                ds, sampler, args.pr_strategy, args.pr_count, iter_options(args, config), args.penalty_mode,
            )
        except PairRemovalError as e:
            if e.best is None:
                raise
            logger.warning("%s; reporting the best cycle-free attempt", e)
            solution = e.best
        extra = {"removed_pairs": [list(p) for p in solution.removed_pairs], "restarts": solution.restarts}

    if args.show_trace:
        console.print(TraceVisualizer().create_tree(solution))
    return {**solution.to_dict(), **extra}


def cmd_generate(args: argparse.Namespace) -> int:
    if args.fixture:
        ds = FIXTURES[args.fixture]()
    else:
        spec = GenSpec(
            n=args.n,
            votes=args.votes,
            seed=args.seed,
            mode=args.mode,
            min_sublists=args.min_sublists,
            kind=ListKind(args.list_kind),
            k_min=args.k_min,
            max_list_weight=args.max_list_weight,
        )
        ds = generate(spec)
    if args.output:
        write_votes(ds, Path(args.output))
        console.print(f"[green]Wrote {len(ds.votes)} votes over {ds.n} candidates to {args.output}[/green]")
    else:
        sys.stdout.write(format_votes(ds))
    console.print(f"sha256: {dataset_digest(ds)}")
    return 0


def cmd_solve(args: argparse.Namespace, argv: List[str]) -> int:
    config = load_config(args)
    ds = load_dataset(args)
    processor = ParallelProcessor(config.num_workers)
    start = time.perf_counter()
    result = run_method(args, ds, config, processor)
    seconds = time.perf_counter() - start

    oracle = None
    if args.method != "brute-force" and (args.oracle or ds.n <= config.brute_force_cap):
        reference = brute_force(ds, config.brute_force_cap, processor)
        ranking = Ranking(tuple(result["ranking"]))
        acc = accuracy(represent(ranking), reference.optima)
        oracle = oracle_comparison(result["cumulative_kt"], reference.min_kt, acc)

    report = RunReport(
        command=argv,
        dataset=dataset_summary(ds, Path(args.votes)),
        method=args.method,
        result=result,
        seconds=seconds,
        seed=args.seed,
        oracle=oracle,
    )
    validate_report(report)
    console.print(summary_table(report))
    if config.output_format == "csv":
        _emit(solve_csv(report), args.output)
    else:
        _emit(report.to_json() + "\n", args.output)
    return 0


def cmd_compare(args: argparse.Namespace, argv: List[str]) -> int:
    config = load_config(args)
    ds = load_dataset(args)
    processor = ParallelProcessor(config.num_workers)
    sampler = make_sampler(args.sampler, config, num_pairs(ds.n), args.seed, processor)
    comparison = compare_methods(
        ds, sampler, runs=args.runs, trials=args.trials,
        opts=iter_options(args, config), seed=args.seed, processor=processor,
    )
    console.print(comparison_table(comparison))
    if config.output_format == "json":
        report = RunReport(
            command=argv,
            dataset=dataset_summary(ds, Path(args.votes)),
            method="iterative",
            result={
                "rows": [row.to_row() for row in comparison.rows],
                "summary": comparison.summary(),
            },
            seconds=sum(r.seconds for r in comparison.iterative) + comparison.kwiksort_seconds,
            seed=args.seed,
        )
        validate_report(report)
        _emit(report.to_json() + "\n", args.output)
    else:
        _emit(comparison_csv(comparison), args.output)
    return 0


def cmd_dump_qubo(args: argparse.Namespace) -> int:
    config = load_config(args)
    ds = load_dataset(args)
    pm = build_comparison(ds)
    if args.method == "n2":
        qubo = build_n2_qubo(pm, len(ds.votes)).qubo
    else:
        opts = IterOptions(parity=None if args.parity == "auto" else args.parity, epsilon=config.epsilon)
        # the loop builds its starting ledger without sampling
        loop = CycleLoop(ds, None, opts, mode="minmax" if args.method == "base" else "iterative")
        qubo = build_iterative_qubo(loop.b, loop.ledger)
    console.print(TraceVisualizer().qubo_tree(qubo))
    _emit(qubo.dumps(), args.output)
    return 0


def main(args=None) -> int:
    """Main entry point.

    Args:
        args: Optional list of command line arguments. If None, sys.argv[1:] will be used.

    Returns:
        int: Exit code (0 for success, 1 for error; usage errors exit 2)
    """
    argv = list(sys.argv[1:] if args is None else args)
    parsed = parse_args(argv)
    setup_logging(parsed.verbose, getattr(parsed, "log_file", None))

    try:
        if parsed.command == "generate":
            return cmd_generate(parsed)
        if parsed.command == "solve":
            return cmd_solve(parsed, argv)
        if parsed.command == "compare":
            return cmd_compare(parsed, argv)
        return cmd_dump_qubo(parsed)
    except KemenyError as e:
        console.print(f"[red]Error: {str(e)}[/red]")
        return 1
    except Exception as e:
        logger.debug("Unexpected failure", exc_info=True)
        console.print(f"[red]Error: {str(e)}[/red]")
        return 1


if __name__ == "__main__":
    sys.exit(main())
