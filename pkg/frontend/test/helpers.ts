import { fileURLToPath } from "node:url";
import { TRAJECTORY_COLUMNS } from "../src/csv.js";

export const FIXTURE_DIR = fileURLToPath(new URL("./.fixtures", import.meta.url));

export function fixture(name: string): string {
  return `${FIXTURE_DIR}/${name}`;
}

export const CONTROLLERS = ["pid", "smc", "aismc"] as const;

export function trajectoryFixtures(task: number): string[] {
  return CONTROLLERS.map((c) => fixture(`task${task}_${c}_seed5.csv`));
}

/** synthetic log text with constant values in selected columns */
export function syntheticCsv(
  rows: number,
  overrides: Record<string, number | ((i: number) => number)> = {},
  meta = "# seed=1 task=1 controller=aismc control_period=0.05",
): string {
  const lines = [TRAJECTORY_COLUMNS.join(","), meta];
  for (let i = 0; i < rows; i++) {
    const cells = TRAJECTORY_COLUMNS.map((name) => {
      if (name === "t") return (i * 0.05).toString();
      const v = overrides[name];
      if (v === undefined) return "0";
      return (typeof v === "function" ? v(i) : v).toString();
    });
    lines.push(cells.join(","));
  }
  return lines.join("\n") + "\n";
}
