#!/usr/bin/env node
/**
 * Figure generation from simulator CSV logs.
 *
 *   rovsim-plots tracking --csv run1.csv run2.csv --out tracking.svg
 *   rovsim-plots violin   --csv run1.csv run2.csv --out violin.svg
 *
 * Output is SVG (vector). Inputs are never modified.
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { EmptyInput, SchemaMismatch } from "./errors.js";
import { renderTracking } from "./tracking.js";
import { renderViolin } from "./violin.js";

export async function main(argv: string[]): Promise<number> {
  try {
    await yargs(argv)
      .scriptName("rovsim-plots")
      .command(
        "tracking",
        "stacked attitude time-series panels with reference overlay",
        (y) => y
          .option("csv", { type: "string", array: true, demandOption: true,
                           describe: "trajectory CSV files (one per controller)" })
          .option("out", { type: "string", demandOption: true })
          .option("channels", { type: "string", default: "pitch,roll,yaw" })
          .option("reference", { type: "boolean", default: true }),
        (args) => {
          renderTracking({
            csvPaths: args.csv as string[],
            outPath: args.out as string,
            channels: (args.channels as string).split(",").map((c) => c.trim()),
            showReference: args.reference as boolean,
          });
          console.log(`wrote ${args.out}`);
        },
      )
      .command(
        "violin",
        "error-distribution violins grouped by task",
        (y) => y
          .option("csv", { type: "string", array: true, demandOption: true })
          .option("out", { type: "string", demandOption: true })
          .option("annotate-rmse", { type: "boolean", default: true }),
        (args) => {
          renderViolin({
            csvPaths: args.csv as string[],
            outPath: args.out as string,
            annotateRmse: args["annotate-rmse"] as boolean,
          });
          console.log(`wrote ${args.out}`);
        },
      )
      .demandCommand(1)
      .strict()
      .fail((msg, err) => {
        throw err ?? new Error(msg);
      })
      .parseAsync();
    return 0;
  } catch (error) {
    if (error instanceof SchemaMismatch || error instanceof EmptyInput) {
      console.error(`input error: ${error.message}`);
      return 2;
    }
    console.error(String(error instanceof Error ? error.message : error));
    return 1;
  }
}

const isDirectRun = process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isDirectRun) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
