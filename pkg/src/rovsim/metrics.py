"""Tracking-error metrics: RMSE, error distributions and controller comparisons.

The headline number is the attitude RMSE, reported per channel and pooled
jointly over pitch, roll and yaw (the total is the root of the mean of the
three per-channel mean-square errors). The evaluation window defaults to
the full run, transients included.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindow, MismatchedRuns, SchemaMismatch
from .trajlog import TrajectoryLog

# Error-channel name -> column in the logged error block.
CHANNELS = {"x": 0, "y": 1, "z": 2, "roll": 3, "pitch": 4, "yaw": 5}

QUANTILES = (0.01, 0.05, 0.25, 0.50, 0.75, 0.95, 0.99)


def _window_mask(t: np.ndarray, window) -> np.ndarray:
    if window is None:
        return np.ones(len(t), dtype=bool)
    t0, t1 = window
    return (t >= t0) & (t <= t1)


def error_samples(log: TrajectoryLog, channel: str, window=None) -> np.ndarray:
    """Signed tracking-error samples of one channel over the window."""
    if channel not in CHANNELS:
        raise SchemaMismatch(f"unknown channel {channel!r}; expected one of {sorted(CHANNELS)}")
    mask = _window_mask(log.t, window)
    if not np.any(mask):
        raise EmptyWindow(f"window {window} selects no samples")
    return log.e[mask, CHANNELS[channel]]


def mean_square_error(log: TrajectoryLog, channel: str, window=None) -> float:
    samples = error_samples(log, channel, window)
    return float(np.mean(samples * samples))


def rmse(log: TrajectoryLog, channel: str, window=None) -> float:
    """Root-mean-square tracking error of one channel over the window."""
    return float(np.sqrt(mean_square_error(log, channel, window)))


def total_rmse(pitch_ms: float, roll_ms: float, yaw_ms: float) -> float:
    """Joint attitude RMSE pooled from per-channel mean-square errors."""
    if min(pitch_ms, roll_ms, yaw_ms) < 0:
        raise ValueError("mean-square errors must be non-negative")
    return float(np.sqrt((pitch_ms + roll_ms + yaw_ms) / 3.0))


@dataclass
class RmseReport:
    """Attitude RMSE summary of one run."""

    task: int
    controller: str
    seed: int
    pitch: float
    roll: float
    yaw: float
    total: float
    window: tuple[float, float]

    @classmethod
    def from_log(cls, log: TrajectoryLog, window=None) -> "RmseReport":
        ms = {c: mean_square_error(log, c, window) for c in ("pitch", "roll", "yaw")}
        if window is None:
            window = (float(log.t[0]), float(log.t[-1]))
        return cls(
            task=log.task, controller=log.controller, seed=log.seed,
            pitch=float(np.sqrt(ms["pitch"])), roll=float(np.sqrt(ms["roll"])),
            yaw=float(np.sqrt(ms["yaw"])),
            total=total_rmse(ms["pitch"], ms["roll"], ms["yaw"]),
            window=(float(window[0]), float(window[1])),
        )


@dataclass
class ErrorDistribution:
    """Summary of the signed error distribution of one channel."""

    channel: str
    quantiles: dict[float, float]
    mean: float
    sd: float
    n: int


def error_distribution(log: TrajectoryLog, channel: str, window=None) -> ErrorDistribution:
    """Empirical quantiles, mean and standard deviation of signed errors."""
    samples = error_samples(log, channel, window)
    qs = np.quantile(samples, QUANTILES)
    return ErrorDistribution(
        channel=channel,
        quantiles={q: float(v) for q, v in zip(QUANTILES, qs)},
        mean=float(np.mean(samples)),
        sd=float(np.std(samples, ddof=1)) if len(samples) > 1 else 0.0,
        n=len(samples),
    )


_REPORT_ORDER = ("pid", "smc", "aismc")


@dataclass
class ComparisonRow:
    task: int
    controller: str
    pitch: float
    roll: float
    yaw: float
    total: float
    reduction_vs_pid: float | None = None
    reduction_vs_smc: float | None = None


@dataclass
class ComparisonReport:
    rows: list[ComparisonRow]

    def to_text(self) -> str:
        header = f"{'task':>4}  {'controller':<10} {'pitch':>8} {'roll':>8} {'yaw':>8} " \
                 f"{'total':>8} {'vs PID':>8} {'vs SMC':>8}"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            red_pid = f"{r.reduction_vs_pid:7.1f}%" if r.reduction_vs_pid is not None else "       -"
            red_smc = f"{r.reduction_vs_smc:7.1f}%" if r.reduction_vs_smc is not None else "       -"
            lines.append(f"{r.task:>4}  {r.controller:<10} {r.pitch:8.4f} {r.roll:8.4f} "
                         f"{r.yaw:8.4f} {r.total:8.4f} {red_pid} {red_smc}")
        return "\n".join(lines) + "\n"

    def to_csv(self, path, seed: int) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("task,controller,seed,rmse_pitch,rmse_roll,rmse_yaw,rmse_total,"
                    "reduction_vs_pid_pct,reduction_vs_smc_pct\n")
            for r in self.rows:
                red_pid = f"{r.reduction_vs_pid:.17g}" if r.reduction_vs_pid is not None else ""
                red_smc = f"{r.reduction_vs_smc:.17g}" if r.reduction_vs_smc is not None else ""
                f.write(f"{r.task},{r.controller},{seed},{r.pitch:.17g},{r.roll:.17g},"
                        f"{r.yaw:.17g},{r.total:.17g},{red_pid},{red_smc}\n")


def comparison_report(logs: list[TrajectoryLog], window=None) -> ComparisonReport:
    """Per-task RMSE table for the benchmark controllers plus reductions.

    Expects one log per (task, controller) with the adaptive controller and
    both benchmarks present for every task, all runs paired on the seed and
    sharing the control period.
    """
    by_task: dict[int, dict[str, TrajectoryLog]] = {}
    for log in logs:
        group = by_task.setdefault(log.task, {})
        if log.controller in group:
            raise MismatchedRuns(f"duplicate run for task {log.task}, {log.controller}")
        group[log.controller] = log

    rows: list[ComparisonRow] = []
    for task in sorted(by_task):
        group = by_task[task]
        missing = [c for c in _REPORT_ORDER if c not in group]
        if missing:
            raise MismatchedRuns(f"task {task} is missing controllers: {missing}")
        seeds = {log.seed for log in group.values()}
        periods = {log.control_period for log in group.values()}
        if len(seeds) > 1 or len(periods) > 1:
            raise MismatchedRuns(f"task {task} runs are not paired (seeds={seeds})")
        reports = {c: RmseReport.from_log(group[c], window) for c in _REPORT_ORDER}
        for c in _REPORT_ORDER:
            r = reports[c]
            row = ComparisonRow(task, c, r.pitch, r.roll, r.yaw, r.total)
            if c == "aismc":
                row.reduction_vs_pid = 100.0 * (1.0 - r.total / reports["pid"].total)
                row.reduction_vs_smc = 100.0 * (1.0 - r.total / reports["smc"].total)
            rows.append(row)
    return ComparisonReport(rows)
