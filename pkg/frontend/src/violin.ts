/**
 * Violin figure of signed attitude-error distributions, one violin per
 * (task, controller) cell, grouped by task with a shared zero line.
 *
 * The violin body is a mirrored kernel density estimate of the pooled
 * roll/pitch/yaw errors; a degenerate (constant) sample collapses to a flat
 * bar at its value. Each violin is annotated with the run's joint attitude
 * RMSE, carried at full precision in a data-rmse attribute.
 */

import { writeFileSync } from "node:fs";
import { TrajectoryLog, readTrajectoryCsv } from "./csv.js";
import { EmptyInput } from "./errors.js";
import { attitudeTotalRmse, gaussianKde, pooledAttitudeErrors, quantile } from "./stats.js";
import { LinearScale, SvgBuilder, niceTicks, tickLabel } from "./svg.js";
import { controllerColor } from "./tracking.js";

const CONTROLLER_ORDER = ["pid", "smc", "ismc", "aismc"];

export interface ViolinSpec {
  csvPaths: string[];
  outPath?: string;
  width?: number;
  height?: number;
  annotateRmse?: boolean;
}

interface Cell {
  log: TrajectoryLog;
  samples: number[];
  rmse: number;
}

function sortKey(log: TrajectoryLog): [number, number] {
  const order = CONTROLLER_ORDER.indexOf(log.meta.controller);
  return [log.meta.task, order < 0 ? CONTROLLER_ORDER.length : order];
}

export function renderViolin(spec: ViolinSpec): string {
  if (spec.csvPaths.length === 0) {
    throw new EmptyInput("no input CSV files");
  }
  const logs = spec.csvPaths.map((path) => readTrajectoryCsv(path));
  logs.sort((a, b) => {
    const [ta, ca] = sortKey(a);
    const [tb, cb] = sortKey(b);
    return ta - tb || ca - cb;
  });
  const cells: Cell[] = logs.map((log) => ({
    log,
    samples: pooledAttitudeErrors(log),
    rmse: attitudeTotalRmse(log),
  }));

  const width = spec.width ?? Math.max(380, 90 * cells.length + 140);
  const height = spec.height ?? 420;
  const margin = { left: 64, right: 16, top: 40, bottom: 64 };
  const svg = new SvgBuilder(width, height);
  svg.text(margin.left, 20, "Attitude error distributions", { size: 14, color: "#000" });

  let lo = Infinity;
  let hi = -Infinity;
  for (const cell of cells) {
    lo = Math.min(lo, quantile(cell.samples, 0.001));
    hi = Math.max(hi, quantile(cell.samples, 0.999));
  }
  if (!(hi > lo)) {
    lo -= 0.05;
    hi += 0.05;
  }
  const pad = 0.1 * (hi - lo);
  const y = new LinearScale(lo - pad, hi + pad, height - margin.bottom, margin.top);

  svg.line(margin.left, margin.top, margin.left, height - margin.bottom, "#444");
  for (const tick of niceTicks(lo - pad, hi + pad, 6)) {
    const py = y.map(tick);
    svg.line(margin.left - 4, py, margin.left, py, "#444");
    svg.text(margin.left - 7, py + 3.5, tickLabel(tick), { anchor: "end", size: 10 });
  }
  svg.text(margin.left - 46, (margin.top + height - margin.bottom) / 2,
           "signed error [rad]", { anchor: "middle", size: 11, rotate: -90 });

  // shared zero line
  const zeroY = y.map(0);
  svg.line(margin.left, zeroY, width - margin.right, zeroY, "#888", 1, "3,3");

  const slotWidth = (width - margin.left - margin.right) / cells.length;
  const halfMax = 0.42 * slotWidth;

  cells.forEach((cell, i) => {
    const cx = margin.left + slotWidth * (i + 0.5);
    const color = controllerColor(cell.log.meta.controller, i);
    const kde = gaussianKde(cell.samples);
    if (kde.bandwidth === 0) {
      // degenerate distribution: flat bar at the constant value
      svg.rect(cx - halfMax, y.map(kde.grid[0]) - 1.5, 2 * halfMax, 3, color);
    } else {
      const dMax = Math.max(...kde.density);
      const right = kde.grid.map((v, j): [number, number] =>
        [cx + (kde.density[j] / dMax) * halfMax, y.map(v)]);
      const left = kde.grid.map((v, j): [number, number] =>
        [cx - (kde.density[j] / dMax) * halfMax, y.map(v)]).reverse();
      svg.polygon([...right, ...left], color, color, 0.55);
      // median marker
      const med = quantile(cell.samples, 0.5);
      svg.line(cx - 6, y.map(med), cx + 6, y.map(med), "#000", 1.4);
    }
    svg.text(cx, height - margin.bottom + 16, cell.log.meta.controller,
             { anchor: "middle", size: 11 });
    svg.text(cx, height - margin.bottom + 30, `task ${cell.log.meta.task}`,
             { anchor: "middle", size: 10, color: "#555" });
    if (spec.annotateRmse ?? true) {
      svg.text(cx, height - margin.bottom + 44, `RMSE ${cell.rmse.toFixed(4)}`, {
        anchor: "middle", size: 10, color: "#333",
        attrs: { "data-rmse-total": cell.rmse.toPrecision(17) },
      });
    }
  });

  const out = svg.toString();
  if (spec.outPath) writeFileSync(spec.outPath, out, "utf-8");
  return out;
}
