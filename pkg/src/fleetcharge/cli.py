"""Command line interface.

Subcommands: ``generate`` (sample a scenario from a template), ``run``
(simulate one or both strategies and write a run directory), ``compare``
(diff two finished runs), ``report`` (regenerate CSV reports from a run
directory) and ``plan`` (solve a single planning problem from JSON).

Exit codes: 0 success, 1 usage or configuration error, 2 input validation
failure, 3 internal invariant violation detected after a run.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from .generator import ScenarioTemplate, generate_scenario
from .model import (
    Scenario,
    ScenarioFormatError,
    dump_scenario,
    load_scenario,
    validate_scenario,
)
from .planner import planner_input_from_dict, solution_to_dict, solve_charging_problem
from .reports import write_comparison_csv, write_report_csvs, write_run_outputs
from .simulation import (
    audit_run,
    compare,
    metrics_from_dict,
    run_offline_baseline,
    run_proposed,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3

# scenario-wide parameter overrides accepted by `run --set`
_RUN_KEYS = {
    "p_max",
    "p_bar",
    "e_full",
    "e_safe",
    "price_energy",
    "kappa",
    "rho",
    "w_hat",
    "budget",
    "port_power",
    "port_count",
}


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Everything `run` needs: where the scenario is, which strategies to
    simulate, where outputs go, and scenario-wide parameter overrides."""

    scenario_path: str
    strategy: str
    out_dir: str
    overrides: dict[str, float]
    relax_detour_margin: bool = False


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors by default; this tool reserves 2
    for input validation, so usage errors exit 1 instead."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _parse_run_overrides(items: list[str]) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"override {item!r} is not of the form key=value")
        if key not in _RUN_KEYS:
            raise ValueError(
                f"unknown override key {key!r}; known keys: "
                + ", ".join(sorted(_RUN_KEYS))
            )
        try:
            overrides[key] = float(value)
        except ValueError:
            raise ValueError(f"override {key!r} needs a numeric value, got {value!r}")
    return overrides


def _parse_template_sets(items: list[str]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"override {item!r} is not of the form key=value")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def _apply_overrides(scenario: Scenario, ov: dict[str, float]) -> Scenario:
    if not ov:
        return scenario
    stations = []
    for s in scenario.stations:
        kw: dict[str, Any] = {}
        if "price_energy" in ov:
            kw["electricity_price_energy"] = ov["price_energy"]
        if "port_power" in ov:
            kw["port_power"] = ov["port_power"]
        if "port_count" in ov:
            kw["port_count"] = int(ov["port_count"])
        stations.append(replace(s, **kw) if kw else s)
    trucks = []
    param_keys = ("p_max", "p_bar", "e_full", "e_safe", "kappa", "rho")
    for t in scenario.trucks:
        tkw: dict[str, Any] = {}
        pkw = {k: ov[k] for k in param_keys if k in ov}
        if pkw:
            tkw["params"] = replace(t.params, **pkw)
        if "w_hat" in ov:
            tkw["w_hat_default"] = ov["w_hat"]
        if "budget" in ov:
            tkw["extra_time_budget"] = ov["budget"]
        trucks.append(replace(t, **tkw) if tkw else t)
    return replace(scenario, stations=tuple(stations), trucks=tuple(trucks))


def cmd_generate(args: argparse.Namespace) -> int:
    doc: dict[str, Any] = {}
    if args.template:
        try:
            doc = json.loads(Path(args.template).read_text())
        except OSError as exc:
            return _fail(EXIT_USAGE, f"cannot read template: {exc}")
        except json.JSONDecodeError as exc:
            return _fail(EXIT_VALIDATION, f"template is not valid JSON: {exc}")
        if not isinstance(doc, dict):
            return _fail(EXIT_VALIDATION, "template must be a JSON object")
    try:
        doc.update(_parse_template_sets(args.set))
        template = ScenarioTemplate.from_dict(doc)
    except (TypeError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"bad template: {exc}")
    try:
        scenario = generate_scenario(template, args.seed)
    except ValueError as exc:
        return _fail(EXIT_USAGE, f"generation failed: {exc}")
    dump_scenario(scenario, args.out)
    print(
        f"wrote {args.out}: {len(scenario.trucks)} trucks, "
        f"{len(scenario.stations)} stations, seed {args.seed}"
    )
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        overrides = _parse_run_overrides(args.set)
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    config = RunConfig(
        scenario_path=args.scenario,
        strategy=args.strategy,
        out_dir=args.out,
        overrides=overrides,
        relax_detour_margin=args.relax_detour_margin,
    )
    try:
        scenario = load_scenario(config.scenario_path)
    except OSError as exc:
        return _fail(EXIT_USAGE, f"cannot read scenario: {exc}")
    except ScenarioFormatError as exc:
        return _fail(EXIT_VALIDATION, f"bad scenario: {exc}")
    scenario = _apply_overrides(scenario, config.overrides)
    problems = validate_scenario(scenario)
    if problems:
        for p in problems:
            print(f"scenario invalid: {p}", file=sys.stderr)
        return EXIT_VALIDATION

    strict = not config.relax_detour_margin
    strategies = {
        "both": ("offline", "proposed"),
        "offline": ("offline",),
        "proposed": ("proposed",),
    }[config.strategy]
    out = Path(config.out_dir)
    results = {}
    for strategy in strategies:
        runner = run_offline_baseline if strategy == "offline" else run_proposed
        result = runner(scenario, require_detour_margin_everywhere=strict)
        violations = audit_run(scenario, result)
        if violations:
            for v in violations:
                print(f"audit failure ({strategy}): {v}", file=sys.stderr)
            return EXIT_INTERNAL
        write_run_outputs(result, out / strategy)
        results[strategy] = result
        m = result.metrics
        print(
            f"{strategy}: {len(m.trips)} trucks, total wait "
            f"{m.total_waiting_minutes:.2f} min, {m.deadline_violation_count} "
            f"late, {m.stranded_count} stranded -> {out / strategy}"
        )
    if config.strategy == "both":
        report = compare(results["offline"].metrics, results["proposed"].metrics)
        path = write_comparison_csv(report, out / "compare.csv")
        print(
            f"wait reduction {report.wait_reduction_pct:.2f}% "
            f"({report.wait_baseline:.2f} -> {report.wait_proposed:.2f} min) "
            f"-> {path}"
        )
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    metrics = []
    for run_dir in (args.baseline, args.proposed):
        path = Path(run_dir) / "metrics.json"
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            return _fail(EXIT_USAGE, f"cannot read run: {exc}")
        except json.JSONDecodeError as exc:
            return _fail(EXIT_VALIDATION, f"{path} is not valid JSON: {exc}")
        try:
            metrics.append(metrics_from_dict(doc))
        except (KeyError, TypeError, ValueError) as exc:
            return _fail(EXIT_VALIDATION, f"{path} is not a metrics file: {exc}")
    try:
        report = compare(metrics[0], metrics[1])
    except ValueError as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    path = write_comparison_csv(report, args.out)
    print(
        f"wait reduction {report.wait_reduction_pct:.2f}% "
        f"({report.wait_baseline:.2f} -> {report.wait_proposed:.2f} min) -> {path}"
    )
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    run = Path(args.run_dir)
    if not (run / "metrics.json").is_file() or not (run / "ledgers.json").is_file():
        return _fail(
            EXIT_USAGE, f"{run} is not a run directory (missing metrics or ledgers)"
        )
    try:
        written = write_report_csvs(run)
    except json.JSONDecodeError as exc:
        return _fail(EXIT_VALIDATION, f"corrupt run files: {exc}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    try:
        text = Path(args.input).read_text() if args.input else sys.stdin.read()
    except OSError as exc:
        return _fail(EXIT_USAGE, f"cannot read input: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return _fail(EXIT_VALIDATION, f"input is not valid JSON: {exc}")
    try:
        inp = planner_input_from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        return _fail(EXIT_VALIDATION, f"bad planning input: {exc}")
    solution = solve_charging_problem(inp)
    out_text = json.dumps(solution_to_dict(solution), indent=2, allow_nan=False) + "\n"
    if args.out:
        Path(args.out).write_text(out_text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(out_text)
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="fleetcharge",
        description="Fleet charging coordination simulator.",
    )
    sub = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )

    p = sub.add_parser("generate", help="sample a scenario from a template")
    p.add_argument("--template", help="template JSON file (defaults apply if omitted)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--out", default="scenario.json", help="output scenario path")
    p.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a template field (JSON values, repeatable)",
    )
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", help="simulate a scenario")
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument(
        "--strategy",
        choices=("proposed", "offline", "both"),
        default="both",
        help="which strategy to simulate (default both)",
    )
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a scenario-wide parameter (repeatable): "
        + ", ".join(sorted(_RUN_KEYS)),
    )
    p.add_argument(
        "--relax-detour-margin",
        action="store_true",
        help="require the reserve-plus-detour bound only at ramps where the "
        "truck actually stops, instead of at every ramp",
    )
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="compare two finished runs")
    p.add_argument("baseline", help="run directory of the baseline")
    p.add_argument("proposed", help="run directory of the proposed strategy")
    p.add_argument("--out", default="compare.csv", help="output CSV path")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", help="regenerate report CSVs for a run")
    p.add_argument("run_dir", help="run directory with metrics.json and ledgers.json")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("plan", help="solve one planning problem from JSON")
    p.add_argument("--input", help="input JSON path (stdin if omitted)")
    p.add_argument("--out", help="output JSON path (stdout if omitted)")
    p.set_defaults(func=cmd_plan)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
