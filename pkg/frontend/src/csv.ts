/**
 * Readers for the simulator's CSV outputs.
 *
 * Trajectory logs: one header row, a `# key=value ...` metadata comment,
 * then one numeric row per control step. The column set is fixed; anything
 * else is a schema mismatch. RMSE reports are a single-row CSV keyed by
 * task/controller/seed.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { EmptyInput, SchemaMismatch } from "./errors.js";

const AXES = ["x", "y", "z", "phi", "theta", "psi"] as const;

export const TRAJECTORY_COLUMNS: readonly string[] = [
  "t",
  ...AXES,
  "u", "v", "w", "p", "q", "r",
  ...AXES.map((a) => `${a}_r`),
  ...AXES.map((a) => `e_${a}`),
  ...AXES.map((a) => `s_${a}`),
  ...AXES.map((a) => `k_hat_${a}`),
  ...Array.from({ length: 8 }, (_, i) => `mu_${i + 1}`),
  ...AXES.map((a) => `tauE_${a}`),
  "V1", "sat_flag",
];

export interface LogMeta {
  seed: number;
  task: number;
  controller: string;
  controlPeriod: number;
  fault?: string;
}

export interface TrajectoryLog {
  meta: LogMeta;
  /** column name -> samples, one entry per control step */
  columns: Map<string, number[]>;
  rows: number;
  path: string;
}

function parseMetaLine(line: string, meta: Partial<LogMeta> & { fault?: string }): void {
  const body = line.replace(/^#\s*/, "");
  if (body.startsWith("fault=")) {
    meta.fault = body.slice("fault=".length);
    return;
  }
  for (const token of body.split(/\s+/)) {
    const eq = token.indexOf("=");
    if (eq < 0) continue;
    const key = token.slice(0, eq);
    const value = token.slice(eq + 1);
    if (key === "seed") meta.seed = Number(value);
    else if (key === "task") meta.task = Number(value);
    else if (key === "controller") meta.controller = value;
    else if (key === "control_period") meta.controlPeriod = Number(value);
  }
}

export function parseTrajectoryCsv(text: string, path = "<string>"): TrajectoryLog {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() === "") {
    throw new EmptyInput(`${path}: no content`);
  }
  const header = lines[0].trim().split(",");
  if (header.length !== TRAJECTORY_COLUMNS.length ||
      header.some((name, i) => name !== TRAJECTORY_COLUMNS[i])) {
    throw new SchemaMismatch(`${path}: header does not match the trajectory log schema`);
  }

  const meta: Partial<LogMeta> & { fault?: string } = {};
  const dataLines: string[] = [];
  for (const line of lines.slice(1)) {
    const trimmed = line.trim();
    if (trimmed === "") continue;
    if (trimmed.startsWith("#")) {
      parseMetaLine(trimmed, meta);
    } else {
      dataLines.push(trimmed);
    }
  }
  if (dataLines.length === 0) {
    throw new EmptyInput(`${path}: no data rows`);
  }

  const parsed = Papa.parse<number[]>(dataLines.join("\n"), {
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaMismatch(`${path}: ${first.message} (row ${first.row})`);
  }

  const columns = new Map<string, number[]>();
  TRAJECTORY_COLUMNS.forEach((name) => columns.set(name, []));
  for (const row of parsed.data) {
    if (row.length !== TRAJECTORY_COLUMNS.length) {
      throw new SchemaMismatch(
        `${path}: expected ${TRAJECTORY_COLUMNS.length} cells, got ${row.length}`);
    }
    row.forEach((value, i) => {
      if (typeof value !== "number" || Number.isNaN(value)) {
        throw new SchemaMismatch(`${path}: non-numeric cell in column ${TRAJECTORY_COLUMNS[i]}`);
      }
      columns.get(TRAJECTORY_COLUMNS[i])!.push(value);
    });
  }

  return {
    meta: {
      seed: meta.seed ?? 0,
      task: meta.task ?? 0,
      controller: meta.controller ?? "unknown",
      controlPeriod: meta.controlPeriod ?? 0,
      fault: meta.fault,
    },
    columns,
    rows: dataLines.length,
    path,
  };
}

export function readTrajectoryCsv(path: string): TrajectoryLog {
  return parseTrajectoryCsv(readFileSync(path, "utf-8"), path);
}

export function column(log: TrajectoryLog, name: string): number[] {
  const values = log.columns.get(name);
  if (values === undefined) {
    throw new SchemaMismatch(`${log.path}: unknown column ${name}`);
  }
  return values;
}

export interface RmseReportRow {
  task: number;
  controller: string;
  seed: number;
  windowStart: number;
  windowEnd: number;
  pitch: number;
  roll: number;
  yaw: number;
  total: number;
}

const RMSE_HEADER = "task,controller,seed,window_start,window_end," +
  "rmse_pitch,rmse_roll,rmse_yaw,rmse_total";

export function readRmseCsv(path: string): RmseReportRow[] {
  const text = readFileSync(path, "utf-8");
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "" && !l.startsWith("#"));
  if (lines.length === 0) throw new EmptyInput(`${path}: no content`);
  if (lines[0].trim() !== RMSE_HEADER) {
    throw new SchemaMismatch(`${path}: unexpected RMSE report header`);
  }
  return lines.slice(1).map((line) => {
    const cells = line.split(",");
    return {
      task: Number(cells[0]),
      controller: cells[1],
      seed: Number(cells[2]),
      windowStart: Number(cells[3]),
      windowEnd: Number(cells[4]),
      pitch: Number(cells[5]),
      roll: Number(cells[6]),
      yaw: Number(cells[7]),
      total: Number(cells[8]),
    };
  });
}
