/**
 * Attitude-tracking figure: stacked panels (pitch, roll, yaw by default)
 * with the reference trajectory overlaid and one curve per controller.
 *
 * Each legend entry is annotated with that run's channel RMSE; the exact
 * value is carried in a data-rmse attribute so downstream checks can verify
 * it against the report files at full precision.
 */

import { writeFileSync } from "node:fs";
import { TrajectoryLog, column, readTrajectoryCsv } from "./csv.js";
import { EmptyInput, SchemaMismatch } from "./errors.js";
import { ANGLE_COLUMNS, channelRmse } from "./stats.js";
import { LinearScale, SvgBuilder, niceTicks, tickLabel } from "./svg.js";

export const CONTROLLER_COLORS: Record<string, string> = {
  pid: "#d95f02",
  smc: "#7570b3",
  ismc: "#66a61e",
  aismc: "#1b9e77",
};

const FALLBACK_COLORS = ["#e7298a", "#a6761d", "#666666"];

export interface TrackingSpec {
  csvPaths: string[];
  outPath?: string;
  channels?: string[];
  showReference?: boolean;
  width?: number;
  height?: number;
}

export function controllerColor(name: string, index: number): string {
  return CONTROLLER_COLORS[name] ?? FALLBACK_COLORS[index % FALLBACK_COLORS.length];
}

export function renderTracking(spec: TrackingSpec): string {
  if (spec.csvPaths.length === 0) {
    throw new EmptyInput("no input CSV files");
  }
  const channels = spec.channels ?? ["pitch", "roll", "yaw"];
  for (const channel of channels) {
    if (!(channel in ANGLE_COLUMNS)) {
      throw new SchemaMismatch(`unknown channel ${channel}; expected pitch/roll/yaw`);
    }
  }
  const logs = spec.csvPaths.map((path) => readTrajectoryCsv(path));
  const showReference = spec.showReference ?? true;

  const width = spec.width ?? 860;
  const panelHeight = 150;
  const margin = { left: 64, right: 16, top: 34, bottom: 24 };
  const legendRows = logs.length + (showReference ? 1 : 0);
  const legendHeight = 16 * legendRows + 8;
  const height = spec.height ??
    margin.top + channels.length * (panelHeight + 26) + legendHeight + margin.bottom;

  const svg = new SvgBuilder(width, height);
  svg.text(margin.left, 20, "Attitude tracking", { size: 14, color: "#000" });

  const t = column(logs[0], "t");
  const tMin = Math.min(...logs.map((l) => column(l, "t")[0]));
  const tMax = Math.max(...logs.map((l) => {
    const tt = column(l, "t");
    return tt[tt.length - 1];
  }));
  const x = new LinearScale(tMin, tMax, margin.left, width - margin.right);

  channels.forEach((channel, panelIdx) => {
    const { value, reference } = ANGLE_COLUMNS[channel];
    const top = margin.top + panelIdx * (panelHeight + 26);
    const bottom = top + panelHeight;

    let lo = Infinity;
    let hi = -Infinity;
    const series = logs.map((log) => column(log, value));
    const refSeries = column(logs[0], reference);
    const considered = showReference ? [...series, refSeries] : series;
    for (const s of considered) {
      for (const v of s) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
    if (lo === hi) {
      lo -= 0.05;
      hi += 0.05;
    }
    const pad = 0.08 * (hi - lo);
    const y = new LinearScale(lo - pad, hi + pad, bottom, top);

    // frame + ticks
    svg.line(margin.left, top, margin.left, bottom, "#444");
    svg.line(margin.left, bottom, width - margin.right, bottom, "#444");
    for (const tick of niceTicks(lo - pad, hi + pad, 4)) {
      const py = y.map(tick);
      svg.line(margin.left - 4, py, margin.left, py, "#444");
      svg.line(margin.left, py, width - margin.right, py, "#eee");
      svg.text(margin.left - 7, py + 3.5, tickLabel(tick), { anchor: "end", size: 10 });
    }
    for (const tick of niceTicks(tMin, tMax, 8)) {
      const px = x.map(tick);
      svg.line(px, bottom, px, bottom + 4, "#444");
      if (panelIdx === channels.length - 1) {
        svg.text(px, bottom + 16, tickLabel(tick), { anchor: "middle", size: 10 });
      }
    }
    svg.text(margin.left - 46, (top + bottom) / 2, `${channel} [rad]`,
             { anchor: "middle", size: 11, rotate: -90 });

    if (showReference) {
      svg.polyline(refSeries.map((v, i) => [x.map(t[i]), y.map(v)] as [number, number]),
                   "#000", 1.2, "5,4");
    }
    logs.forEach((log, runIdx) => {
      const tt = column(log, "t");
      const vv = column(log, value);
      svg.polyline(vv.map((v, i) => [x.map(tt[i]), y.map(v)] as [number, number]),
                   controllerColor(log.meta.controller, runIdx), 1.3);
    });
  });

  // legend, one row per curve, with per-channel RMSE annotations
  let legendY = margin.top + channels.length * (panelHeight + 26) + 10;
  if (showReference) {
    svg.line(margin.left, legendY - 4, margin.left + 22, legendY - 4, "#000", 1.2, "5,4");
    svg.text(margin.left + 27, legendY, "reference", { size: 11 });
    legendY += 16;
  }
  logs.forEach((log, runIdx) => {
    const color = controllerColor(log.meta.controller, runIdx);
    const rmseParts = channels.map((c) => {
      const value = channelRmse(log, c);
      return { channel: c, value };
    });
    const label = `${log.meta.controller}  ` +
      rmseParts.map((p) => `${p.channel} ${p.value.toFixed(4)}`).join("  ");
    svg.line(margin.left, legendY - 4, margin.left + 22, legendY - 4, color, 2);
    svg.text(margin.left + 27, legendY, `${label} (RMSE, rad)`, {
      size: 11,
      attrs: Object.fromEntries(
        rmseParts.map((p) => [`data-rmse-${p.channel}`, p.value.toPrecision(17)]),
      ),
    });
    legendY += 16;
  });

  const out = svg.toString();
  if (spec.outPath) writeFileSync(spec.outPath, out, "utf-8");
  return out;
}
