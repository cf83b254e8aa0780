"""Command line entry point.

Three subcommands: `run` simulates a scenario file and writes the trace CSV
(figures render alongside it unless suppressed), `verify` executes the
randomized and constructed verification suites, and `sweep` re-runs a
scenario across values of one scalar field, writing per-value traces, an
index CSV, and a summary figure.

Exit codes: 0 success, 1 domain or validation error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .engine import GameMode, consensus_reached, run
from .graphs import disagreement
from .scenario import ScenarioConfig, ScenarioError, load_scenario, write_trace
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2

SWEEPABLE = {
    "alpha": float,
    "epsilon_consensus": float,
    "horizon": int,
    "enumeration_cap": int,
    "attacker.beta_true": float,
    "attacker.type_low": float,
    "attacker.type_high": float,
    "attacker.kappa": float,
    "attacker.rho": float,
    "defender.beta_true": float,
    "defender.type_low": float,
    "defender.type_high": float,
    "defender.kappa": float,
    "defender.rho": float,
}


def _class_segments(trace) -> str:
    segments = []
    for r in trace:
        if not segments or segments[-1][0] != r.eq_class:
            segments.append([r.eq_class, r.k, r.k])
        else:
            segments[-1][2] = r.k
    return ", ".join(
        f"{cls} at k={start}" if start == end else f"{cls} from k={start}"
        for cls, start, end in segments
    )


def _summarize(scenario: ScenarioConfig, trace) -> list[str]:
    final_z = trace[-1].z if trace else disagreement(scenario.x0)
    reached = consensus_reached(trace, scenario.epsilon_consensus)
    lines = [
        f"mode: {scenario.mode.value}  steps: {len(trace)}  final z: {final_z!r}",
        f"consensus: "
        + (
            f"reached at k={reached}"
            if reached is not None
            else f"not reached (eps={scenario.epsilon_consensus!r})"
        ),
    ]
    if trace and scenario.mode is GameMode.SIGNALING:
        lines.append(f"eq class: {_class_segments(trace)}")
    return lines


def cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    if args.mode is not None:
        scenario = dataclasses.replace(scenario, mode=GameMode(args.mode))
    if args.steps is not None:
        if args.steps < 0:
            raise ScenarioError("steps override must be nonnegative")
        scenario = dataclasses.replace(scenario, horizon=args.steps)
    trace = run(scenario)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_trace(trace, out, scenario.n)
    for line in _summarize(scenario, trace):
        print(line)
    print(f"trace: {out}")
    if not args.no_figures:
        from .plots import save_trace_figures

        paths = save_trace_figures(trace, scenario.n, out.parent, out.stem)
        print("figures: " + ", ".join(str(p) for p in paths))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_suite(args.suite, trials=args.trials, seed=args.seed)
    print(f"suite: {result.name}  cases: {result.cases}  time: {result.seconds:.2f}s")
    if result.passed:
        print("PASS")
        return EXIT_OK
    print(f"FAIL ({len(result.failures)} failing cases)")
    for line in result.failures[:20]:
        print(f"  {line}")
    if len(result.failures) > 20:
        print(f"  ... and {len(result.failures) - 20} more")
    return EXIT_VERIFY


def _apply_param(scenario: ScenarioConfig, key: str, value: float | int) -> ScenarioConfig:
    if "." in key:
        player_name, field = key.split(".", 1)
        player = dataclasses.replace(getattr(scenario, player_name), **{field: value})
        return dataclasses.replace(scenario, **{player_name: player})
    return dataclasses.replace(scenario, **{key: value})


def _sweep_one(scenario: ScenarioConfig, key: str, value, out_dir: Path, tag: str):
    trace = run(scenario)
    path = out_dir / f"trace_{tag}.csv"
    write_trace(trace, path, scenario.n)
    final_z = trace[-1].z if trace else disagreement(scenario.x0)
    return value, consensus_reached(trace, scenario.epsilon_consensus), final_z, path


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.param not in SWEEPABLE:
        raise ScenarioError(
            f"--param must be one of {sorted(SWEEPABLE)}, got {args.param!r}"
        )
    caster = SWEEPABLE[args.param]
    try:
        values = [caster(v) for v in args.values.split(",") if v.strip()]
    except ValueError as exc:
        raise ScenarioError(f"could not parse --values: {exc}") from exc
    if not values:
        raise ScenarioError("--values must list at least one value")
    base = load_scenario(args.scenario)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    jobs = []
    for value in values:
        scenario = _apply_param(base, args.param, value)
        # Revalidate through the player-spec and config constructors happened
        # in _apply_param; a bad value raises there.
        tag = f"{args.param.replace('.', '_')}_{value}"
        jobs.append((scenario, value, tag))
    with ThreadPoolExecutor(max_workers=min(8, len(jobs))) as pool:
        rows = list(
            pool.map(lambda j: _sweep_one(j[0], args.param, j[1], out_dir, j[2]), jobs)
        )

    index_path = out_dir / "index.csv"
    lines = ["value,consensus_step,final_z"]
    for value, step_reached, final_z, _ in rows:
        lines.append(
            f"{value!r},{'' if step_reached is None else step_reached},{final_z!r}"
        )
    index_path.write_text("\n".join(lines) + "\n")
    print(f"sweep: {args.param} over {values}")
    for value, step_reached, final_z, path in rows:
        reached = "-" if step_reached is None else str(step_reached)
        print(f"  {args.param}={value!r}: consensus_step={reached} final_z={final_z!r} ({path})")
    print(f"index: {index_path}")
    if not args.no_figures:
        from .plots import save_sweep_figure

        fig = save_sweep_figure(
            [(r[0], r[1], r[2]) for r in rows], args.param, out_dir / "sweep_summary.png"
        )
        print(f"figure: {fig}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jamgame",
        description="Simulate and verify the repeated jamming/defense game over a consensus network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a scenario and write its trace")
    p_run.add_argument("--scenario", required=True, help="scenario JSON path")
    p_run.add_argument("--out", required=True, help="trace CSV output path")
    p_run.add_argument("--mode", choices=[m.value for m in GameMode], help="override the scenario mode")
    p_run.add_argument("--steps", type=int, help="override the scenario horizon")
    p_run.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True, choices=sorted(SUITES))
    p_verify.add_argument("--trials", type=int, default=None, help="randomized case count")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="run a scenario across values of one field")
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--param", required=True, help="scalar config field, e.g. attacker.rho")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
