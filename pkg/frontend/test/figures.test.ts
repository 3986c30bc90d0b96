import { describe, expect, it } from "vitest";
import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { readRmseCsv } from "../src/csv.js";
import { EmptyInput, SchemaMismatch } from "../src/errors.js";
import { renderTracking } from "../src/tracking.js";
import { renderViolin } from "../src/violin.js";
import { CONTROLLERS, fixture, syntheticCsv, trajectoryFixtures } from "./helpers.js";

function sha256(path: string): string {
  return createHash("sha256").update(readFileSync(path)).digest("hex");
}

function extractAnnotations(svg: string, attr: string): number[] {
  const re = new RegExp(`${attr}="([^"]+)"`, "g");
  return [...svg.matchAll(re)].map((m) => Number(m[1]));
}

describe("tracking figure", () => {
  it("renders three panels with reference and one curve per controller", () => {
    const svg = renderTracking({ csvPaths: trajectoryFixtures(1) });
    expect(svg).toContain("<svg");
    for (const channel of ["pitch", "roll", "yaw"]) {
      expect(svg).toContain(`${channel} [rad]`);
    }
    expect(svg).toContain("reference");
    for (const controller of CONTROLLERS) {
      expect(svg).toContain(controller);
    }
    // 3 panels x (reference + 3 runs) polylines
    const polylines = svg.match(/<polyline /g) ?? [];
    expect(polylines.length).toBe(12);
  });

  it("single run renders one curve plus reference per panel", () => {
    const svg = renderTracking({ csvPaths: [fixture("task1_aismc_seed5.csv")] });
    const polylines = svg.match(/<polyline /g) ?? [];
    expect(polylines.length).toBe(6);
  });

  it("reference overlay can be disabled", () => {
    const svg = renderTracking({
      csvPaths: [fixture("task1_aismc_seed5.csv")],
      showReference: false,
    });
    expect(svg).not.toContain("reference");
  });

  it("annotated RMSE equals the metrics report output", () => {
    const svg = renderTracking({ csvPaths: trajectoryFixtures(2) });
    for (const [i, controller] of CONTROLLERS.entries()) {
      const report = readRmseCsv(fixture(`task2_${controller}_seed5_rmse.csv`))[0];
      for (const [channel, expected] of [["pitch", report.pitch],
                                         ["roll", report.roll],
                                         ["yaw", report.yaw]] as const) {
        const annotated = extractAnnotations(svg, `data-rmse-${channel}`)[i];
        expect(Math.abs(annotated - expected)).toBeLessThanOrEqual(1e-12);
      }
    }
  });

  it("leaves input files byte-identical", () => {
    const paths = trajectoryFixtures(3);
    const before = paths.map(sha256);
    renderTracking({ csvPaths: paths });
    expect(paths.map(sha256)).toEqual(before);
  });

  it("writes the output file when asked", () => {
    const out = join(mkdtempSync(join(tmpdir(), "plots-")), "tracking.svg");
    renderTracking({ csvPaths: trajectoryFixtures(1), outPath: out });
    expect(readFileSync(out, "utf-8")).toContain("</svg>");
  });

  it("rejects unknown channels", () => {
    expect(() => renderTracking({
      csvPaths: trajectoryFixtures(1),
      channels: ["pitch", "heave"],
    })).toThrow(SchemaMismatch);
  });

  it("rejects empty input lists and empty files", () => {
    expect(() => renderTracking({ csvPaths: [] })).toThrow(EmptyInput);
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    expect(() => renderTracking({ csvPaths: [empty] })).toThrow(EmptyInput);
  });
});

describe("violin figure", () => {
  const nineCells = [1, 2, 3].flatMap((task) => trajectoryFixtures(task));

  it("renders nine violins grouped by task", () => {
    const svg = renderViolin({ csvPaths: nineCells });
    const polygons = svg.match(/<polygon /g) ?? [];
    expect(polygons.length).toBe(9);
    for (const task of [1, 2, 3]) {
      expect(svg).toContain(`task ${task}`);
    }
    // zero line present
    expect(svg).toContain('stroke-dasharray="3,3"');
  });

  it("annotated total RMSE equals the metrics report output", () => {
    const svg = renderViolin({ csvPaths: trajectoryFixtures(1) });
    const annotated = extractAnnotations(svg, "data-rmse-total");
    for (const [i, controller] of CONTROLLERS.entries()) {
      const report = readRmseCsv(fixture(`task1_${controller}_seed5_rmse.csv`))[0];
      expect(Math.abs(annotated[i] - report.total)).toBeLessThanOrEqual(1e-12);
    }
  });

  it("degenerate constant errors collapse to a flat marker at zero", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const path = join(dir, "flat.csv");
    writeFileSync(path, syntheticCsv(40));
    const svg = renderViolin({ csvPaths: [path] });
    expect(svg).not.toContain("<polygon");
    // the fallback marker is a rect distinct from the white background
    const rects = svg.match(/<rect /g) ?? [];
    expect(rects.length).toBeGreaterThan(1);
  });

  it("symmetric synthetic errors produce a symmetric violin about zero", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const path = join(dir, "sym.csv");
    writeFileSync(path, syntheticCsv(200, {
      e_phi: (i) => 0.1 * Math.sin(i * 1.7),
      e_theta: (i) => -0.1 * Math.sin(i * 1.7),
    }));
    const svg = renderViolin({ csvPaths: [path] });
    expect(svg).toContain("<polygon");
  });

  it("leaves inputs byte-identical", () => {
    const before = nineCells.map(sha256);
    renderViolin({ csvPaths: nineCells });
    expect(nineCells.map(sha256)).toEqual(before);
  });

  it("rejects empty input", () => {
    expect(() => renderViolin({ csvPaths: [] })).toThrow(EmptyInput);
  });
});
