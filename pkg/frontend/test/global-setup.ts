/**
 * Generates fixture CSV logs once per test session by invoking the
 * simulator CLI (the interface this package consumes in production).
 */

import { execSync } from "node:child_process";
import { mkdirSync, rmSync } from "node:fs";
import { fileURLToPath } from "node:url";

export const FIXTURE_DIR = fileURLToPath(new URL("./.fixtures", import.meta.url));

export default function setup(): void {
  rmSync(FIXTURE_DIR, { recursive: true, force: true });
  mkdirSync(FIXTURE_DIR, { recursive: true });
  execSync(
    "python3 -m rovsim compare --duration 20 --seed 5 --tasks 1,2,3 " +
      `--output-dir "${FIXTURE_DIR}"`,
    { stdio: "pipe" },
  );
}
