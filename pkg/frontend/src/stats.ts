/**
 * Error statistics used for figure annotations and violin geometry.
 *
 * The RMSE computations mirror the simulator's metrics so any number drawn
 * on a figure agrees with the corresponding report file to floating-point
 * noise, not merely to display precision.
 */

import { EmptyInput } from "./errors.js";
import { TrajectoryLog, column } from "./csv.js";

/** attitude channel -> error column in the trajectory log */
export const ERROR_COLUMNS: Record<string, string> = {
  roll: "e_phi",
  pitch: "e_theta",
  yaw: "e_psi",
};

/** attitude channel -> (response, reference) columns */
export const ANGLE_COLUMNS: Record<string, { value: string; reference: string }> = {
  roll: { value: "phi", reference: "phi_r" },
  pitch: { value: "theta", reference: "theta_r" },
  yaw: { value: "psi", reference: "psi_r" },
};

export function meanSquare(samples: number[]): number {
  if (samples.length === 0) throw new EmptyInput("no samples");
  let acc = 0;
  for (const x of samples) acc += x * x;
  return acc / samples.length;
}

export function rmse(samples: number[]): number {
  return Math.sqrt(meanSquare(samples));
}

/** joint attitude RMSE pooled from the three per-channel mean squares */
export function totalRmse(pitchMs: number, rollMs: number, yawMs: number): number {
  return Math.sqrt((pitchMs + rollMs + yawMs) / 3);
}

export function channelRmse(log: TrajectoryLog, channel: string): number {
  const col = ERROR_COLUMNS[channel];
  if (!col) throw new EmptyInput(`unknown attitude channel ${channel}`);
  return rmse(column(log, col));
}

export function attitudeTotalRmse(log: TrajectoryLog): number {
  return totalRmse(
    meanSquare(column(log, "e_theta")),
    meanSquare(column(log, "e_phi")),
    meanSquare(column(log, "e_psi")),
  );
}

/** pooled signed attitude-error samples of one run */
export function pooledAttitudeErrors(log: TrajectoryLog): number[] {
  return [
    ...column(log, "e_phi"),
    ...column(log, "e_theta"),
    ...column(log, "e_psi"),
  ];
}

export function mean(samples: number[]): number {
  if (samples.length === 0) throw new EmptyInput("no samples");
  return samples.reduce((a, b) => a + b, 0) / samples.length;
}

export function standardDeviation(samples: number[]): number {
  if (samples.length < 2) return 0;
  const m = mean(samples);
  const ss = samples.reduce((a, b) => a + (b - m) * (b - m), 0);
  return Math.sqrt(ss / (samples.length - 1));
}

/** linear-interpolation quantile of unsorted samples, q in [0, 1] */
export function quantile(samples: number[], q: number): number {
  if (samples.length === 0) throw new EmptyInput("no samples");
  const sorted = [...samples].sort((a, b) => a - b);
  const pos = q * (sorted.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  if (lo === hi) return sorted[lo];
  return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

export interface KdeResult {
  grid: number[];
  density: number[];
  bandwidth: number;
}

/**
 * Gaussian kernel density estimate on an even grid (Silverman bandwidth).
 * Degenerate samples (zero spread) report a zero bandwidth; callers draw a
 * flat marker instead of a shape.
 */
export function gaussianKde(samples: number[], gridSize = 120): KdeResult {
  if (samples.length === 0) throw new EmptyInput("no samples");
  const sd = standardDeviation(samples);
  const iqr = quantile(samples, 0.75) - quantile(samples, 0.25);
  const spread = Math.min(sd, iqr / 1.34) || sd;
  const bandwidth = 0.9 * spread * Math.pow(samples.length, -0.2);
  if (!(bandwidth > 0)) {
    return { grid: [samples[0]], density: [1], bandwidth: 0 };
  }
  const lo = Math.min(...samples) - 3 * bandwidth;
  const hi = Math.max(...samples) + 3 * bandwidth;
  const grid: number[] = [];
  const density: number[] = [];
  const norm = 1 / (samples.length * bandwidth * Math.sqrt(2 * Math.PI));
  for (let i = 0; i < gridSize; i++) {
    const x = lo + ((hi - lo) * i) / (gridSize - 1);
    let acc = 0;
    for (const s of samples) {
      const u = (x - s) / bandwidth;
      acc += Math.exp(-0.5 * u * u);
    }
    grid.push(x);
    density.push(acc * norm);
  }
  return { grid, density, bandwidth };
}
