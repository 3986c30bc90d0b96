"""Trajectory logs and their CSV serialization.

One row per control step. The column order is fixed and the floating-point
values are written with 17 significant digits, so a written log reads back
bit-exactly and identical runs produce byte-identical files. The header row
comes first; run metadata (seed, task, controller, control period) follows
as a single comment line, and a fault marker, if any, is appended as a
trailing comment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SchemaMismatch

_AXES = ("x", "y", "z", "phi", "theta", "psi")

COLUMNS = (
    ("t",)
    + _AXES
    + ("u", "v", "w", "p", "q", "r")
    + tuple(f"{a}_r" for a in _AXES)
    + tuple(f"e_{a}" for a in _AXES)
    + tuple(f"s_{a}" for a in _AXES)
    + tuple(f"k_hat_{a}" for a in _AXES)
    + tuple(f"mu_{i}" for i in range(1, 9))
    + tuple(f"tauE_{a}" for a in _AXES)
    + ("V1", "sat_flag")
)


@dataclass
class TrajectoryLog:
    """Time-indexed record of one closed-loop run at the control rate."""

    task: int
    controller: str
    seed: int
    control_period: float
    t: np.ndarray
    eta: np.ndarray
    nu: np.ndarray
    eta_r: np.ndarray
    e: np.ndarray
    s: np.ndarray
    k_hat: np.ndarray
    mu: np.ndarray
    tau_e: np.ndarray
    v1: np.ndarray
    sat: np.ndarray
    fault: str | None = None

    def __len__(self) -> int:
        return len(self.t)

    def column(self, name: str) -> np.ndarray:
        """Single column by CSV column name."""
        if name not in COLUMNS:
            raise SchemaMismatch(f"unknown column {name!r}")
        return self.to_matrix()[:, COLUMNS.index(name)]

    def to_matrix(self) -> np.ndarray:
        """All columns as one (n, len(COLUMNS)) float matrix."""
        return np.column_stack([
            self.t, self.eta, self.nu, self.eta_r, self.e, self.s,
            self.k_hat, self.mu, self.tau_e, self.v1, self.sat.astype(float),
        ])

    def to_csv(self, path) -> None:
        matrix = self.to_matrix()
        sat_col = len(COLUMNS) - 1
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(",".join(COLUMNS) + "\n")
            f.write(f"# seed={self.seed} task={self.task} controller={self.controller} "
                    f"control_period={self.control_period:.17g}\n")
            for row in matrix:
                cells = [f"{value:.17g}" for value in row[:sat_col]]
                cells.append(str(int(row[sat_col])))
                f.write(",".join(cells) + "\n")
            if self.fault is not None:
                f.write(f"# fault={self.fault}\n")

    @classmethod
    def from_csv(cls, path) -> "TrajectoryLog":
        meta = {}
        fault = None
        rows = []
        with open(path, "r", encoding="utf-8") as f:
            header = f.readline().strip()
            if tuple(header.split(",")) != COLUMNS:
                raise SchemaMismatch(f"unexpected CSV header in {path}")
            for line in f:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    for token in line[1:].split():
                        if "=" in token:
                            key, value = token.split("=", 1)
                            if key == "fault":
                                fault = line.split("fault=", 1)[1]
                            else:
                                meta[key] = value
                    continue
                rows.append([float(cell) for cell in line.split(",")])
        data = np.array(rows, dtype=float).reshape(len(rows), len(COLUMNS))
        return cls._from_matrix(data, meta, fault)

    @classmethod
    def _from_matrix(cls, data, meta, fault) -> "TrajectoryLog":
        return cls(
            task=int(meta.get("task", 0)),
            controller=meta.get("controller", "unknown"),
            seed=int(meta.get("seed", 0)),
            control_period=float(meta.get("control_period", 0.0)),
            t=data[:, 0],
            eta=data[:, 1:7],
            nu=data[:, 7:13],
            eta_r=data[:, 13:19],
            e=data[:, 19:25],
            s=data[:, 25:31],
            k_hat=data[:, 31:37],
            mu=data[:, 37:45],
            tau_e=data[:, 45:51],
            v1=data[:, 51],
            sat=data[:, 52].astype(int),
            fault=fault,
        )


class LogBuilder:
    """Accumulates rows during a run and freezes them into a TrajectoryLog."""

    def __init__(self, task: int, controller: str, seed: int, control_period: float):
        self.task = task
        self.controller = controller
        self.seed = seed
        self.control_period = control_period
        self._rows: list[dict] = []

    def append(self, t, eta, nu, eta_r, e, s, k_hat, mu, tau_e, v1, sat) -> None:
        self._rows.append(dict(t=t, eta=np.array(eta), nu=np.array(nu),
                               eta_r=np.array(eta_r), e=np.array(e), s=np.array(s),
                               k_hat=np.array(k_hat), mu=np.array(mu),
                               tau_e=np.array(tau_e), v1=v1, sat=int(sat)))

    def build(self, fault: str | None = None) -> TrajectoryLog:
        n = len(self._rows)

        def stack(key, width):
            if n == 0:
                return np.zeros((0, width)) if width > 1 else np.zeros(0)
            if width == 1:
                return np.array([r[key] for r in self._rows], dtype=float)
            return np.vstack([r[key] for r in self._rows])

        return TrajectoryLog(
            task=self.task, controller=self.controller, seed=self.seed,
            control_period=self.control_period,
            t=stack("t", 1), eta=stack("eta", 6), nu=stack("nu", 6),
            eta_r=stack("eta_r", 6), e=stack("e", 6), s=stack("s", 6),
            k_hat=stack("k_hat", 6), mu=stack("mu", 8), tau_e=stack("tau_e", 6),
            v1=stack("v1", 1), sat=stack("sat", 1).astype(int), fault=fault,
        )
