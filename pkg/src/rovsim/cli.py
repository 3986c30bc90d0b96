"""Command-line interface: run, compare, sweep and validate.

Exit codes: 0 on success, 2 on configuration errors, 3 on simulation faults.
Command-line flags take precedence over values from the configuration file;
generic overrides use ``--set section.key=value`` with the same syntax as
the file itself.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from .config import RunConfig, dump_config, parse_config
from .errors import ParseError, RovsimError, ValidationError
from .metrics import RmseReport, comparison_report
from .simulation import run_simulation
from .trajlog import TrajectoryLog

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FAULT = 3


def _read_config_text(path: str | None) -> str:
    if path is None:
        return ""
    return Path(path).read_text(encoding="utf-8")


def _collect_overrides(args) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    for flag, dotted in (("task", "run.task"), ("controller", "run.controller"),
                         ("seed", "run.seed"), ("duration", "run.duration"),
                         ("output_dir", "run.output_dir")):
        value = getattr(args, flag, None)
        if value is not None:
            pairs.append((dotted, str(value)))
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise ValidationError(item, "expected section.key=value")
        dotted, raw = item.split("=", 1)
        pairs.append((dotted.strip(), raw.strip()))
    return pairs


def _load(args) -> RunConfig:
    return parse_config(_read_config_text(args.config), _collect_overrides(args))


def _write_rmse_csv(report: RmseReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("task,controller,seed,window_start,window_end,"
                "rmse_pitch,rmse_roll,rmse_yaw,rmse_total\n")
        f.write(f"{report.task},{report.controller},{report.seed},"
                f"{report.window[0]:.17g},{report.window[1]:.17g},"
                f"{report.pitch:.17g},{report.roll:.17g},{report.yaw:.17g},"
                f"{report.total:.17g}\n")


def _run_one(cfg: RunConfig, outdir: Path, controller_id=None, seed=None, task=None):
    setup = cfg.build_setup(controller_id=controller_id, seed=seed, task=task)
    log = run_simulation(setup)
    base = f"task{setup.task}_{log.controller}_seed{log.seed}"
    traj_path = outdir / f"{base}.csv"
    log.to_csv(traj_path)
    rmse_path = None
    if len(log) > 0:
        report = RmseReport.from_log(log)
        rmse_path = outdir / f"{base}_rmse.csv"
        _write_rmse_csv(report, rmse_path)
    return log, traj_path, rmse_path


def cmd_run(args) -> int:
    cfg = _load(args)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    log, traj_path, rmse_path = _run_one(cfg, outdir)
    print(f"trajectory: {traj_path}")
    if rmse_path is not None:
        print(f"rmse report: {rmse_path}")
    if log.fault is not None:
        print(f"simulation fault: {log.fault}", file=sys.stderr)
        return EXIT_FAULT
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _load(args)
    tasks = [int(tok) for tok in args.tasks.split(",")] if args.tasks else [1, 2, 3]
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    logs: list[TrajectoryLog] = []
    faulted = False
    for task in tasks:
        for controller_id in ("pid", "smc", "aismc"):
            # seed left to the config so the three runs share one draw
            log, _, _ = _run_one(cfg, outdir, controller_id=controller_id, task=task)
            if log.fault is not None:
                print(f"task {task} {controller_id} fault: {log.fault}", file=sys.stderr)
                faulted = True
            else:
                logs.append(log)
    if faulted:
        return EXIT_FAULT
    report = comparison_report(logs)
    csv_path = outdir / "comparison.csv"
    txt_path = outdir / "comparison.txt"
    report.to_csv(csv_path, cfg.seed)
    txt_path.write_text(report.to_text(), encoding="utf-8")
    print(report.to_text(), end="")
    print(f"comparison table: {csv_path}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.param:
        raise ValidationError("sweep.param", "at least one --param is required")
    if len(args.param) != len(args.values):
        raise ValidationError("sweep.values", "need one --values list per --param")
    base_text = _read_config_text(args.config)
    base_overrides = _collect_overrides(args)
    grids = [[v.strip() for v in values.split(";") if v.strip()] for values in args.values]
    for param, grid in zip(args.param, grids):
        if not grid:
            raise ValidationError(param, "empty value list")

    cfg0 = parse_config(base_text, base_overrides)
    outdir = Path(cfg0.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for combo in itertools.product(*grids):
        point = list(zip(args.param, combo))
        cfg = parse_config(base_text, base_overrides + point)
        setup = cfg.build_setup()
        log = run_simulation(setup)
        if log.fault is not None:
            print(f"sweep point {point} fault: {log.fault}", file=sys.stderr)
            return EXIT_FAULT
        report = RmseReport.from_log(log)
        rows.append((point, report))
        label = " ".join(f"{p}={v}" for p, v in point)
        print(f"{label}: total rmse {report.total:.4f}")

    sweep_path = outdir / "sweep_summary.csv"
    with open(sweep_path, "w", encoding="utf-8", newline="\n") as f:
        names = ",".join(p.replace(".", "_") for p in args.param)
        f.write(f"{names},task,controller,seed,rmse_pitch,rmse_roll,rmse_yaw,rmse_total\n")
        for point, r in rows:
            values = ",".join(v.replace(",", ";") for _, v in point)
            f.write(f"{values},{r.task},{r.controller},{r.seed},"
                    f"{r.pitch:.17g},{r.roll:.17g},{r.yaw:.17g},{r.total:.17g}\n")
    print(f"sweep summary: {sweep_path}")
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _load(args)
    print(dump_config(cfg), end="")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-c", "--config", help="configuration file (defaults apply if omitted)")
    p.add_argument("--task", type=int, help="override run.task")
    p.add_argument("--controller", help="override run.controller")
    p.add_argument("--seed", type=int, help="override run.seed")
    p.add_argument("--duration", type=float, help="override run.duration")
    p.add_argument("--output-dir", dest="output_dir", help="override run.output_dir")
    p.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE",
                   help="generic config override; repeatable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rovsim",
                                     description="6-DOF ROV attitude-tracking simulation")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one task with one controller")
    _add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="run PID, SMC and AISMC with paired seeds")
    _add_common(p_cmp)
    p_cmp.add_argument("--tasks", help="comma-separated task ids (default: 1,2,3)")
    p_cmp.set_defaults(func=cmd_compare)

    p_sweep = sub.add_parser("sweep", help="grid sweep over configuration values")
    _add_common(p_sweep)
    p_sweep.add_argument("--param", action="append", metavar="SECTION.KEY",
                         help="config key to sweep; repeatable")
    p_sweep.add_argument("--values", action="append", metavar="V1;V2;...",
                         help="semicolon-separated values for the matching --param")
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="validate a config and print it resolved")
    _add_common(p_val)
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RovsimError as exc:
        print(f"simulation fault: {exc}", file=sys.stderr)
        return EXIT_FAULT


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
