"""Command-line surface: solve, gap, run, compile, sweep, preset.

Exit codes: 0 on success, 2 for configuration problems, 3 for numerical
failures. Results go to stdout or to the file given with -o; diagnostics
go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

import numpy as np

from . import presets
from .analysis import (
    ConfigError,
    ExperimentConfig,
    sweep,
    write_sweep_csv,
)
from .engine import run as engine_run
from .hamiltonians import build_driver, build_problem, gap_scan
from .maxcut import WeightedGraph, basin_counts, brute_force_max, payoff_table
from .noise import noisy_run
from .pulses import compile_schedule, verify_schedule


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc


def _load_graph(path) -> WeightedGraph:
    """Accept either a bare instance file or a full experiment config."""
    data = _load_json(path)
    if "graph" in data or "graph_file" in data:
        return ExperimentConfig.from_file(path).graph
    try:
        return WeightedGraph.from_dict(data)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _bits(s: int, n: int) -> str:
    return format(s, f"0{n}b")


def cmd_preset(args) -> int:
    if args.name != "paper":
        raise ConfigError(f"unknown preset {args.name!r}")
    with _output(args.output) as fh:
        json.dump(presets.paper_config_dict(), fh, indent=2)
        fh.write("\n")
    return 0


def cmd_solve(args) -> int:
    graph = _load_graph(args.config)
    argmax, best = brute_force_max(graph)
    table = payoff_table(graph).values
    report = {
        "n": graph.n,
        "payoff_table": [float(x) for x in table],
        "argmax": [_bits(s, graph.n) for s in argmax],
        "max_payoff": best,
        "greedy": {},
    }
    for rule in ("accept-equal", "strict"):
        counts = basin_counts(graph, rule=rule)
        report["greedy"][rule] = {
            "basins": {_bits(s, graph.n): c for s, c in counts.items()}
        }
    with _output(args.output) as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


def cmd_gap(args) -> int:
    graph = _load_graph(args.config)
    h_b = build_driver(graph.n).operator
    h_p = build_problem(graph).to_operator()
    result = gap_scan(
        h_b, h_p, grid_points=args.grid, which=args.which, refine_levels=args.refine_levels
    )
    with _output(args.output) as fh:
        fh.write("s,gap\n")
        for s, g in zip(result.s_values, result.gaps):
            fh.write(f"{float(s)!r},{float(g)!r}\n")
    print(f"g_min = {result.g_min!r} at s = {result.s_at_min!r}", file=sys.stderr)
    return 0


def cmd_run(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    M = args.M if args.M is not None else config.schedule.M_list[0]
    mode = args.mode
    sched = config.schedule.schedule(M)
    h_b = build_driver(config.graph.n).operator
    h_p = build_problem(config.graph).to_operator()
    compiled = None
    if config.nmr is not None:
        compiled = compile_schedule(
            sched, config.graph, config.nmr.system,
            mapping=config.nmr.mapping, sign=config.nmr.sign,
        )
    if mode == "noisy":
        if compiled is None:
            raise ConfigError("mode 'noisy' needs an nmr block")
        if config.noise is None or not config.noise.enabled:
            raise ConfigError("mode 'noisy' needs an enabled noise block")
        state = noisy_run(sched, compiled, h_b, h_p, config.noise).final_state
    else:
        state = engine_run(sched, h_b, h_p, mode=mode).final_state.to_density()
    argmax, _ = brute_force_max(config.graph)
    diagonal = [float(x) for x in state.populations()]
    report = {
        "M": M,
        "mode": mode,
        "diagonal": diagonal,
        "targets": [_bits(s, config.graph.n) for s in argmax],
        "p_target": float(sum(diagonal[s] for s in argmax)),
        "wall_clock_s": compiled.total_wall_clock_s if compiled is not None else None,
    }
    with _output(args.output) as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return 0


def cmd_compile(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    if config.nmr is None:
        raise ConfigError("compile needs an nmr block")
    M = args.M if args.M is not None else config.schedule.M_list[0]
    sched = config.schedule.schedule(M)
    compiled = compile_schedule(
        sched, config.graph, config.nmr.system,
        mapping=config.nmr.mapping, sign=config.nmr.sign,
    )
    h_b = build_driver(config.graph.n).operator
    h_p = build_problem(config.graph).to_operator()
    worst = verify_schedule(compiled, sched, h_b, h_p)
    with _output(args.output) as fh:
        json.dump(compiled.to_dict(), fh, indent=2)
        fh.write("\n")
    print(
        f"M = {M}: total_wall_clock_s = {compiled.total_wall_clock_s!r}, "
        f"max slice distance to engine = {worst:.3e}",
        file=sys.stderr,
    )
    return 0


def cmd_sweep(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    rows = sweep(config, normalize=args.normalize)
    with _output(args.output) as fh:
        write_sweep_csv(rows, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqopt",
        description="Discrete-time adiabatic MAXCUT simulator and pulse-schedule compiler",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preset", help="emit a built-in experiment config")
    p.add_argument("name", help="preset name (currently: paper)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("solve", help="brute-force and greedy report for an instance")
    p.add_argument("config", help="instance or experiment config JSON")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gap", help="spectral gap scan CSV")
    p.add_argument("config", help="instance or experiment config JSON")
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--which", choices=("top-two", "bottom-two"), default="top-two")
    p.add_argument("--refine-levels", type=int, default=3)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("run", help="single run: final-state diagonal and success probability")
    p.add_argument("config")
    p.add_argument("--M", type=int, default=None, help="override M (default: first of M_list)")
    p.add_argument("--mode", choices=("ideal", "trotter", "noisy"), default="trotter")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compile", help="export the pulse schedule and verify it")
    p.add_argument("config")
    p.add_argument("--M", type=int, default=None, help="override M (default: first of M_list)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("sweep", help="M sweep CSV against the reference run")
    p.add_argument("config")
    p.add_argument("--normalize", action="store_true",
                   help="unit-Frobenius deviation distances instead of raw")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
