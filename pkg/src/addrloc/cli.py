"""Command line front end.

Every subcommand is a pure function of its flags and input files: fixed
seeds, no wall clock, no hidden state, so repeated runs emit byte-identical
output.  Analysis subcommands write CSV with a header row and full
double-precision values; rounding is left to downstream plotting.

Exit status: 0 on success, 1 on input or value errors (message on stderr),
2 on usage errors (from argument parsing).
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from pathlib import Path

from . import synth
from .cachesim import POLICIES, MissCurve, sweep, write_interfault_csv, write_miss_ratio_csv
from .locality import (
    concentration_curve,
    run_lengths,
    stack_distances,
    working_set,
    write_concentration_csv,
    write_runs_csv,
    write_stackdist_csv,
    write_wss_csv,
)
from ._csvfmt import fmt
from .searchcost import (
    CostModel,
    binary_search_cost,
    constant_cost,
    optimal_cache_size,
    search_time_curve,
    write_search_time_csv,
)
from .trace import Trace, read_trace, save_trace, split_by_protocol, summarize, write_trace

_POWER_SWEEP = (1, 2, 4, 8, 16, 32, 64, 128, 256)
_DEFAULT_WINDOWS = (10, 20, 50, 100, 200, 500, 1000)
_COST_MODELS: dict[str, CostModel] = {
    "binary": binary_search_cost,
    "constant": constant_cost,
}


def default_capacities(distinct: int) -> list[int]:
    """Powers of two up to 256 plus the distinct-destination count."""
    return sorted(set(_POWER_SWEEP) | {distinct})


def _clipped_capacities(distinct: int, database_size: int) -> list[int]:
    """Default sweep for search time: every capacity must stay <= n."""
    caps = {c for c in _POWER_SWEEP if c < database_size}
    caps.add(database_size)
    if distinct <= database_size:
        caps.add(distinct)
    return sorted(caps)


@contextmanager
def _out_stream(path):
    """Open `path` for writing, or pass stdout through for None/'-'."""
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as stream:
            yield stream


def _note_written(path) -> None:
    if path is not None and path != "-":
        print(f"wrote {path}")


def _read_nonempty(path) -> Trace:
    trace = read_trace(path)
    if len(trace) == 0:
        raise ValueError(f"{path}: trace has no records")
    return trace


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValueError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if not values:
        raise ValueError(f"{what}: empty list")
    return values


def _parse_weights(text: str, what: str) -> tuple[float, ...]:
    try:
        weights = [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValueError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    total = sum(weights)
    if not weights or total <= 0 or any(w < 0 for w in weights):
        raise ValueError(f"{what}: weights must be nonnegative with a positive sum")
    return tuple(w / total for w in weights)


def _parse_policies(text: str) -> list[str]:
    policies = [part.strip().upper() for part in text.split(",") if part.strip()]
    if not policies:
        raise ValueError("no policies given")
    for policy in policies:
        if policy not in POLICIES:
            raise ValueError(f"unknown policy {policy!r}, expected one of {', '.join(POLICIES)}")
    if len(set(policies)) != len(policies):
        raise ValueError(f"duplicate policy in {text!r}")
    return policies


def _parse_capacities(text: str) -> list[int]:
    capacities = _parse_int_list(text, "--capacities")
    if any(c < 1 for c in capacities):
        raise ValueError("--capacities: entries must be >= 1")
    return sorted(set(capacities))


def _part_model(text: str) -> synth.Model:
    kind, sep, arg = text.partition(":")
    if not sep or not arg:
        raise ValueError(f"interleave part {text!r}: expected KIND:ARG")
    if kind == "cyclic":
        return synth.Cyclic(int(arg))
    if kind == "uniform-irm":
        return synth.UniformIrm(int(arg))
    if kind == "irm":
        return synth.Irm(_parse_weights(arg, "irm part"))
    if kind == "lru-stack":
        return synth.LruStackModel(_parse_weights(arg, "lru-stack part"))
    raise ValueError(f"interleave part {text!r}: unknown kind {kind!r}")


def _model_from_args(args, parser: argparse.ArgumentParser) -> synth.Model:
    if args.stack_size is not None and args.lru_stack is None:
        parser.error("--stack-size requires --lru-stack")
    if (args.pattern is None) != (args.interleave is None):
        parser.error("--interleave and --pattern must be given together")
    if args.cyclic is not None:
        return synth.Cyclic(args.cyclic)
    if args.uniform_irm is not None:
        return synth.UniformIrm(args.uniform_irm)
    if args.irm is not None:
        return synth.Irm(_parse_weights(args.irm, "--irm"))
    if args.lru_stack is not None:
        pmf = _parse_weights(args.lru_stack, "--lru-stack")
        if args.stack_size is None:
            return synth.LruStackModel(pmf)
        stack = tuple(f"a{i}" for i in range(args.stack_size))
        return synth.LruStackModel(pmf, stack)
    parts = tuple(_part_model(part) for part in args.interleave.split(";") if part)
    pattern = tuple(_parse_int_list(args.pattern, "--pattern"))
    return synth.Interleave(parts, pattern)


def _cmd_summarize(args) -> int:
    s = summarize(_read_nonempty(args.trace))
    print(
        f"frames={s.frame_count} addresses={s.distinct_addresses} "
        f"destinations={s.distinct_destinations} duration_hours={fmt(s.duration_hours)}"
    )
    return 0


def _cmd_gen(args, parser) -> int:
    model = _model_from_args(args, parser)
    spec = synth.GeneratorSpec(model, args.length, args.seed)
    trace = synth.generate(spec)
    if args.out is None or args.out == "-":
        write_trace(trace, sys.stdout)
    else:
        save_trace(trace, args.out)
        _note_written(args.out)
    return 0


def _cmd_split(args) -> int:
    trace = read_trace(args.trace)
    wanted = args.proto
    matching, rest = split_by_protocol(trace, lambda proto: proto == wanted)
    save_trace(matching, args.match_out)
    _note_written(args.match_out)
    save_trace(rest, args.rest_out)
    _note_written(args.rest_out)
    return 0


def _cmd_concentration(args) -> int:
    curve = concentration_curve(_read_nonempty(args.trace).destinations())
    with _out_stream(args.out) as stream:
        write_concentration_csv(curve, stream)
    _note_written(args.out)
    return 0


def _windows_for(requested, available: int) -> list[int]:
    usable = []
    for window in requested:
        if window > available:
            print(
                f"note: skipping window {window}: exceeds trace length {available}",
                file=sys.stderr,
            )
        else:
            usable.append(window)
    if not usable:
        raise ValueError(f"no window fits a trace of {available} references")
    return usable


def _cmd_wss(args) -> int:
    destinations = _read_nonempty(args.trace).destinations()
    requested = (
        _parse_int_list(args.windows, "--windows")
        if args.windows
        else list(_DEFAULT_WINDOWS)
    )
    reports = [
        working_set(destinations, window, args.mode)
        for window in _windows_for(requested, len(destinations))
    ]
    with _out_stream(args.out) as stream:
        write_wss_csv(reports, stream)
    _note_written(args.out)
    return 0


def _cmd_stackdist(args) -> int:
    destinations = _read_nonempty(args.trace).destinations()
    _, hist = stack_distances(destinations, method=args.method)
    with _out_stream(args.out) as stream:
        write_stackdist_csv(hist, stream)
    _note_written(args.out)
    return 0


def _cmd_runs(args) -> int:
    hist = run_lengths(_read_nonempty(args.trace).destinations())
    with _out_stream(args.out) as stream:
        write_runs_csv(hist, stream)
    _note_written(args.out)
    return 0


def _sweep_curves(destinations, policies, capacities, seed) -> list[MissCurve]:
    return [sweep(destinations, policy, capacities, seed=seed) for policy in policies]


def _cmd_simulate(args) -> int:
    destinations = _read_nonempty(args.trace).destinations()
    policies = _parse_policies(args.policies)
    capacities = (
        _parse_capacities(args.capacities)
        if args.capacities
        else default_capacities(len(set(destinations)))
    )
    curves = _sweep_curves(destinations, policies, capacities, args.seed)
    with _out_stream(args.miss_out) as stream:
        write_miss_ratio_csv(curves, stream)
    _note_written(args.miss_out)
    with _out_stream(args.interfault_out) as stream:
        write_interfault_csv(curves, stream)
    _note_written(args.interfault_out)
    return 0


def _cmd_searchtime(args) -> int:
    destinations = _read_nonempty(args.trace).destinations()
    distinct = len(set(destinations))
    database_size = args.database_size if args.database_size else distinct
    capacities = (
        _parse_capacities(args.capacities)
        if args.capacities
        else _clipped_capacities(distinct, database_size)
    )
    cost = _COST_MODELS[args.cost]
    curves = [
        search_time_curve(curve, database_size, cost)
        for curve in _sweep_curves(destinations, _parse_policies(args.policies), capacities, args.seed)
    ]
    with _out_stream(args.out) as stream:
        write_search_time_csv(curves, stream)
    _note_written(args.out)
    return 0


def _cmd_report(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    trace = _read_nonempty(args.trace)
    destinations = trace.destinations()
    distinct = len(set(destinations))
    s = summarize(trace)

    def emit(name: str, writer) -> None:
        path = out_dir / name
        with open(path, "w", encoding="utf-8", newline="") as stream:
            writer(stream)
        _note_written(path)

    curve = concentration_curve(destinations)
    emit("concentration.csv", lambda st: write_concentration_csv(curve, st))

    requested = (
        _parse_int_list(args.windows, "--windows")
        if args.windows
        else list(_DEFAULT_WINDOWS)
    )
    reports = [
        working_set(destinations, window, args.mode)
        for window in _windows_for(requested, len(destinations))
    ]
    emit("wss.csv", lambda st: write_wss_csv(reports, st))

    _, hist = stack_distances(destinations)
    emit("stackdist.csv", lambda st: write_stackdist_csv(hist, st))

    runs = run_lengths(destinations)
    emit("runs.csv", lambda st: write_runs_csv(runs, st))

    policies = _parse_policies(args.policies)
    database_size = args.database_size if args.database_size else distinct
    capacities = (
        _parse_capacities(args.capacities)
        if args.capacities
        else _clipped_capacities(distinct, database_size)
    )
    miss_curves = _sweep_curves(destinations, policies, capacities, args.seed)
    emit("miss_ratio.csv", lambda st: write_miss_ratio_csv(miss_curves, st))
    emit("interfault.csv", lambda st: write_interfault_csv(miss_curves, st))

    cost = _COST_MODELS[args.cost]
    time_curves = [search_time_curve(curve, database_size, cost) for curve in miss_curves]
    emit("searchtime.csv", lambda st: write_search_time_csv(time_curves, st))

    def write_summary(stream) -> None:
        stream.write(f"frames={s.frame_count}\n")
        stream.write(f"addresses={s.distinct_addresses}\n")
        stream.write(f"destinations={s.distinct_destinations}\n")
        stream.write(f"duration_hours={fmt(s.duration_hours)}\n")
        stream.write(f"dest_fraction_for_50pct_frames={fmt(curve.quantile(0.5))}\n")
        stream.write(f"dest_fraction_for_90pct_frames={fmt(curve.quantile(0.9))}\n")
        for time_curve in time_curves:
            best_c, best_t = optimal_cache_size(time_curve)
            stream.write(f"optimal_cache_size_{time_curve.policy}={best_c}\n")
            stream.write(f"optimal_search_time_{time_curve.policy}={fmt(best_t)}\n")

    emit("summary.txt", write_summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addrloc",
        description="Locality analysis and cache simulation for address reference traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="print frame/address counts and duration")
    p.add_argument("trace")
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser(
        "gen",
        help="generate a synthetic trace",
        description="Generate a synthetic trace from a seeded reference model. "
        "Weights for --irm/--lru-stack are normalized to a pmf.",
    )
    model = p.add_mutually_exclusive_group(required=True)
    model.add_argument("--cyclic", type=int, metavar="K", help="round-robin over K addresses")
    model.add_argument(
        "--uniform-irm", type=int, metavar="N", help="i.i.d. uniform over N addresses"
    )
    model.add_argument("--irm", metavar="W1,W2,...", help="i.i.d. with per-address weights")
    model.add_argument(
        "--lru-stack", metavar="W1,W2,...", help="stack model with per-depth weights"
    )
    model.add_argument(
        "--interleave",
        metavar="KIND:ARG;...",
        help="weave part streams round-robin, e.g. 'cyclic:30;uniform-irm:100'",
    )
    p.add_argument("--stack-size", type=int, help="stack depth for --lru-stack (default: #weights)")
    p.add_argument("--pattern", metavar="N1,N2,...", help="per-cycle take counts for --interleave")
    p.add_argument("--length", type=int, required=True, help="number of references")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output trace file (default: stdout)")
    p.set_defaults(func=None)  # handled specially: needs the parser for usage errors

    p = sub.add_parser("split", help="split a trace by protocol tag")
    p.add_argument("trace")
    p.add_argument("--proto", required=True, help="protocol token selecting the matching side")
    p.add_argument("--match-out", required=True)
    p.add_argument("--rest-out", required=True)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser(
        "concentration",
        help="cumulative traffic share of top-ranked destinations",
        description="CSV columns: dest_fraction, frame_fraction.",
    )
    p.add_argument("trace")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=_cmd_concentration)

    p = sub.add_parser(
        "wss",
        help="average working set size per window",
        description="CSV columns: window, mode, avg_wss. Windows larger than "
        "the trace are skipped with a note on stderr.",
    )
    p.add_argument("trace")
    default_windows = ",".join(str(w) for w in _DEFAULT_WINDOWS)
    p.add_argument(
        "--windows", metavar="W1,W2,...", help=f"window sizes (default: {default_windows})"
    )
    p.add_argument("--mode", choices=("disjoint", "sliding"), default="disjoint")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=_cmd_wss)

    p = sub.add_parser(
        "stackdist",
        help="LRU stack distance histogram",
        description="CSV columns: distance, count, pdf, cdf; final row 'inf' "
        "counts first references.",
    )
    p.add_argument("trace")
    p.add_argument("--method", choices=("fenwick", "naive"), default="fenwick")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=_cmd_stackdist)

    p = sub.add_parser(
        "runs",
        help="histogram of consecutive-reference run lengths",
        description="CSV columns: length, count, frequency.",
    )
    p.add_argument("trace")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=_cmd_runs)

    p = sub.add_parser(
        "simulate",
        help="miss ratio and interfault distance over a capacity sweep",
        description="Writes two CSVs (capacity + one column per policy): "
        "miss ratios and mean references per miss.",
    )
    p.add_argument("trace")
    p.add_argument("--policies", default="MIN,LRU,FIFO,RAND")
    p.add_argument(
        "--capacities",
        metavar="C1,C2,...",
        help="cache sizes (default: 1,2,4,...,256 plus the distinct-destination count)",
    )
    p.add_argument("--seed", type=int, default=0, help="RAND eviction seed")
    p.add_argument("--miss-out", default="miss_ratio.csv")
    p.add_argument("--interfault-out", default="interfault.csv")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "searchtime",
        help="normalized search time over a capacity sweep",
        description="CSV columns: capacity + one normalized-time column per "
        "policy. T < 1 means the cache speeds lookups up.",
    )
    p.add_argument("trace")
    p.add_argument("--policies", default="LRU")
    p.add_argument(
        "--capacities",
        metavar="C1,C2,...",
        help="cache sizes (default: powers of two below the database size, plus it)",
    )
    p.add_argument("--seed", type=int, default=0, help="RAND eviction seed")
    p.add_argument(
        "--database-size",
        type=int,
        help="full table size n (default: distinct destinations in the trace)",
    )
    p.add_argument("--cost", choices=sorted(_COST_MODELS), default="binary")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=_cmd_searchtime)

    p = sub.add_parser(
        "report",
        help="run the whole battery and write one file per analysis",
        description="Writes concentration.csv, wss.csv, stackdist.csv, runs.csv, "
        "miss_ratio.csv, interfault.csv, searchtime.csv, summary.txt into --out-dir.",
    )
    p.add_argument("trace")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--windows", metavar="W1,W2,...")
    p.add_argument("--mode", choices=("disjoint", "sliding"), default="disjoint")
    p.add_argument("--policies", default="MIN,LRU,FIFO,RAND")
    p.add_argument("--capacities", metavar="C1,C2,...")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--database-size", type=int)
    p.add_argument("--cost", choices=sorted(_COST_MODELS), default="binary")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args, parser)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
