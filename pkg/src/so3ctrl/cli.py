"""Command-line front end.

Subcommands: run, validate-gains, figures, properties.  Exit codes are
part of the interface:

    0   success (and, for validate-gains, a feasible gain set)
    1   one or more property batteries failed
    2   gain certification failed
    3   the integrator diverged or a Newton solve stalled
    64  usage or config errors (bad flags, missing file, bad YAML, bad values)
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from .controllers import validate_gains
from .dynamics import IntegrationError
from .harness import (
    CASE_IDS,
    ConfigError,
    GainInfeasibleError,
    apply_overrides,
    bundled_config_path,
    load_config,
    run_scenario,
    scenario_from_dict,
)
from .properties import run_all

EXIT_OK = 0
EXIT_PROPERTY_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_INTEGRATION = 3
EXIT_USAGE = 64

_FIGURE_CASES = CASE_IDS[:3]


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit 2 on usage errors; we reserve 2 for gains."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="so3ctrl",
                description="Geometric adaptive attitude tracking runner.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario and export CSV/metrics")
    run.add_argument("--config", required=True, help="scenario YAML path")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                     dest="overrides",
                     help="override a config entry (dotted keys, repeatable)")
    run.add_argument("--force-gains", action="store_true",
                     help="run even if gain certification fails")

    vg = sub.add_parser("validate-gains",
                        help="print the gain certification report")
    vg.add_argument("--config", required=True, help="scenario YAML path")

    figs = sub.add_parser("figures",
                          help="run the three bundled cases, emit fig*.csv")
    figs.add_argument("--out", required=True, help="output directory")

    props = sub.add_parser("properties", help="run the random property suite")
    props.add_argument("--seed", type=int, default=0)
    props.add_argument("--cases", type=int, default=100000,
                       help="samples per property (minimum 1000)")
    return p


def _load_scenario_args(config_path, overrides=(), force_gains=False):
    try:
        cfg = load_config(config_path)
    except OSError as err:
        raise ConfigError(f"cannot read config: {err}") from None
    cfg = apply_overrides(cfg, overrides)
    if force_gains:
        cfg["force_gains"] = True
    return scenario_from_dict(cfg)


def _write_outputs(out_dir, ts, metrics) -> str:
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "timeseries.csv")
    ts.to_csv(csv_path)
    with open(os.path.join(out_dir, "metrics.txt"), "w") as f:
        f.write(metrics.to_kv() + "\n")
    return csv_path


def _cmd_run(args) -> int:
    s = _load_scenario_args(args.config, args.overrides, args.force_gains)
    ts, metrics = run_scenario(s)
    csv_path = _write_outputs(args.out, ts, metrics)
    print(f"wrote {csv_path} ({len(ts)} rows) and metrics.txt")
    print(metrics.to_kv())
    return EXIT_OK


def _cmd_validate_gains(args) -> int:
    s = _load_scenario_args(args.config)
    report = validate_gains(
        s.gains, (s.J_true.lambda_min, s.J_true.lambda_max), s.psi_bar,
        robust=s.robust,
    )
    print(report.to_text())
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _cmd_figures(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    for i, case_id in enumerate(_FIGURE_CASES, start=1):
        s = _load_scenario_args(bundled_config_path(case_id))
        ts, _ = run_scenario(s)
        path = os.path.join(args.out, f"fig{i}.csv")
        ts.to_csv(path)
        print(f"wrote {path} ({case_id}, {len(ts)} rows)")
    return EXIT_OK


def _cmd_properties(args) -> int:
    results = run_all(seed=args.seed, cases=args.cases)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} properties passed")
    return EXIT_OK if failed == 0 else EXIT_PROPERTY_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    handler = {
        "run": _cmd_run,
        "validate-gains": _cmd_validate_gains,
        "figures": _cmd_figures,
        "properties": _cmd_properties,
    }[args.command]
    try:
        return handler(args)
    except ConfigError as err:
        print(f"so3ctrl: config error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"so3ctrl: invalid value: {err}", file=sys.stderr)
        return EXIT_USAGE
    except GainInfeasibleError as err:
        print(f"so3ctrl: {err}", file=sys.stderr)
        print(err.report.to_text(), file=sys.stderr)
        return EXIT_INFEASIBLE
    except IntegrationError as err:
        print(f"so3ctrl: integration failed: {err}", file=sys.stderr)
        return EXIT_INTEGRATION


if __name__ == "__main__":
    sys.exit(main())
