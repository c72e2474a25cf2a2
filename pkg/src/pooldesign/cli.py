"""Command-line interface: optimal, minimax, bayes, range, and table commands.

Exit codes: 0 success, 2 usage or invalid input, 3 numerical failure,
4 golden-table mismatch. Output is deterministic; human-readable formats
print 6 significant digits, machine formats keep full precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import core, efficiency, minimax, ranges
from .bayes import PriorSpec, QuadratureError, bayes_optimal_k
from .efficiency import TableReport

CONFIG_ENV_VAR = "POOLDESIGN_CONFIG"
FORMATS = ("csv", "json", "markdown")


@dataclass
class RunConfig:
    grid_step: float = 1e-6
    quad_tol: float = 1e-10
    k_scan_patience: int = 10
    output: str = "markdown"


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, raw = line.partition("=")
            values[key.strip()] = raw.strip()
    return values


def _build_config(args) -> RunConfig:
    cfg = RunConfig()
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV_VAR)
    if path:
        raw = _load_config_file(path)
        if "grid_step" in raw:
            cfg.grid_step = float(raw["grid_step"])
        if "quad_tol" in raw:
            cfg.quad_tol = float(raw["quad_tol"])
        if "k_scan_patience" in raw:
            cfg.k_scan_patience = int(raw["k_scan_patience"])
        if "format" in raw:
            if raw["format"] not in FORMATS:
                raise ValueError(f"config format must be one of {FORMATS}")
            cfg.output = raw["format"]
    # flags override the config file
    if getattr(args, "grid_step", None) is not None:
        cfg.grid_step = args.grid_step
    if getattr(args, "quad_tol", None) is not None:
        cfg.quad_tol = args.quad_tol
    if getattr(args, "patience", None) is not None:
        cfg.k_scan_patience = args.patience
    if getattr(args, "format", None) is not None:
        cfg.output = args.format
    if not (cfg.grid_step > 0 and cfg.quad_tol > 0 and cfg.k_scan_patience >= 1):
        raise ValueError("grid_step and quad_tol must be positive, patience >= 1")
    return cfg


def _fmt(value, machine: bool) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g") if machine else format(value, ".6g")
    return str(value)


def _emit_record(name: str, fields: dict, cfg: RunConfig) -> None:
    if cfg.output == "json":
        print(json.dumps({"command": name, **fields}, sort_keys=False))
    elif cfg.output == "csv":
        print(",".join(fields))
        print(",".join(_fmt(v, machine=True) for v in fields.values()))
    else:
        print(f"### {name}")
        print("| field | value |")
        print("| --- | --- |")
        for key, value in fields.items():
            print(f"| {key} | {_fmt(value, machine=False)} |")


def _emit_table(report: TableReport, cfg: RunConfig) -> None:
    if cfg.output == "json":
        payload = {
            "table": report.table_id,
            "title": report.title,
            "columns": report.columns,
            "rows": [{"label": label, "values": vals} for label, vals in report.rows],
        }
        print(json.dumps(payload, sort_keys=False))
    elif cfg.output == "csv":
        print(",".join(["row"] + report.columns))
        for label, vals in report.rows:
            print(",".join([label] + [_fmt(v, machine=True) for v in vals]))
    else:
        print(f"### {report.title}")
        print("| " + " | ".join(["row"] + report.columns) + " |")
        print("|" + " --- |" * (len(report.columns) + 1))
        for label, vals in report.rows:
            cells = [_fmt(v, machine=False) for v in vals]
            print("| " + " | ".join([label] + cells) + " |")


def _cmd_optimal(args, cfg: RunConfig) -> int:
    p = args.p
    k = core.samuels_optimal_k(p)
    rng = ranges.optimality_range(k)
    _emit_record(
        "optimal",
        {
            "p": p,
            "k_optimal": k,
            "expected_tests": core.optimal_expected_tests(p),
            "range_low": rng.p_low,
            "range_high": rng.p_high,
        },
        cfg,
    )
    return 0


def _cmd_minimax(args, cfg: RunConfig) -> int:
    res = minimax.minimax_group_size(
        args.upper_bound,
        args.method,
        grid_step=cfg.grid_step,
        patience=cfg.k_scan_patience,
    )
    _emit_record(
        "minimax",
        {
            "upper_bound": res.upper_bound,
            "method": res.method,
            "k_minimax": res.k_minimax,
            "worst_p": res.worst_point.p_star,
            "worst_loss": res.worst_point.sup_loss,
        },
        cfg,
    )
    return 0


def _cmd_bayes(args, cfg: RunConfig) -> int:
    if args.prior == "uniform":
        prior = PriorSpec.uniform(args.upper_bound)
    elif args.prior == "jeffreys":
        prior = PriorSpec.jeffreys(args.upper_bound)
    else:
        if args.a is None or args.b is None:
            raise ValueError("--prior beta requires --a and --b")
        prior = PriorSpec(args.a, args.b, args.upper_bound)
    res = bayes_optimal_k(prior, quad_tol=cfg.quad_tol, patience=cfg.k_scan_patience)
    _emit_record(
        "bayes",
        {
            "prior": args.prior,
            "a": prior.a,
            "b": prior.b,
            "upper_bound": prior.upper,
            "k_optimal": res.k_opt,
            "expected_tests": res.expected_tests_at_opt,
        },
        cfg,
    )
    return 0


def _cmd_range(args, cfg: RunConfig) -> int:
    rng = ranges.optimality_range(args.k)
    _emit_record(
        "range", {"k": rng.k, "p_low": rng.p_low, "p_high": rng.p_high}, cfg
    )
    return 0


def _cmd_table(args, cfg: RunConfig) -> int:
    report = efficiency.generate_table(
        f"T{args.table}", quad_tol=cfg.quad_tol, patience=cfg.k_scan_patience
    )
    if args.check:
        mismatches = efficiency.check_table(report)
        if mismatches:
            for m in mismatches:
                print(
                    f"mismatch in {m.table_id} row={m.row} col={m.column}: "
                    f"computed {m.computed!r}, expected {m.expected!r}",
                    file=sys.stderr,
                )
            return 4
        print(f"table {args.table}: all cells match")
        return 0
    _emit_table(report, cfg)
    return 0


def _positive_in_unit(value: str) -> float:
    return float(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pooldesign",
        description="Pool sizes for Dorfman two-stage group testing.",
    )
    parser.add_argument("--config", help="key=value config file (or set $" + CONFIG_ENV_VAR + ")")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=FORMATS, default=None)
        p.add_argument("--grid-step", dest="grid_step", type=float, default=None)
        p.add_argument("--quad-tol", dest="quad_tol", type=float, default=None)
        p.add_argument("--patience", type=int, default=None)
        # SUPPRESS keeps the subcommand from clobbering the top-level value
        p.add_argument(
            "--config", dest="config", default=argparse.SUPPRESS, help=argparse.SUPPRESS
        )

    p_opt = sub.add_parser("optimal", help="optimal pool size for a known prevalence")
    p_opt.add_argument("--p", type=float, required=True)
    add_common(p_opt)
    p_opt.set_defaults(func=_cmd_optimal)

    p_mm = sub.add_parser("minimax", help="pool size minimizing worst-case regret")
    p_mm.add_argument("--upper-bound", dest="upper_bound", type=float, default=1.0)
    p_mm.add_argument("--method", choices=("analytic", "grid"), default="analytic")
    add_common(p_mm)
    p_mm.set_defaults(func=_cmd_minimax)

    p_bayes = sub.add_parser("bayes", help="pool size minimizing prior-mean cost")
    p_bayes.add_argument(
        "--prior", choices=("uniform", "jeffreys", "beta"), required=True
    )
    p_bayes.add_argument("--a", type=float, default=None)
    p_bayes.add_argument("--b", type=float, default=None)
    p_bayes.add_argument("--upper-bound", dest="upper_bound", type=float, default=1.0)
    add_common(p_bayes)
    p_bayes.set_defaults(func=_cmd_bayes)

    p_rng = sub.add_parser("range", help="prevalence interval where a pool size is optimal")
    p_rng.add_argument("--k", type=int, required=True)
    add_common(p_rng)
    p_rng.set_defaults(func=_cmd_range)

    p_tab = sub.add_parser("table", help="regenerate a reference table")
    p_tab.add_argument("--table", type=int, choices=range(1, 6), required=True)
    p_tab.add_argument("--check", action="store_true")
    add_common(p_tab)
    p_tab.set_defaults(func=_cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
        return args.func(args, cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(args, "format", None) == "json":
            print(json.dumps({"error": str(exc)}))
        return 2
    except (QuadratureError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        if getattr(args, "format", None) == "json":
            print(json.dumps({"error": str(exc)}))
        return 3


if __name__ == "__main__":
    sys.exit(main())
