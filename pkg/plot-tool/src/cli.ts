#!/usr/bin/env node
/**
 * plot-tool plot --kind ber --out ber.svg sweep1.csv [sweep2.csv ...]
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { parseSweepCsv } from "./csv.js";
import { PLOT_KINDS, renderFigure, type PlotKind } from "./svg.js";

export function runPlot(kind: PlotKind, out: string, inputs: string[]): void {
  const files = inputs.map((p) => parseSweepCsv(readFileSync(p, "utf8"), p));
  writeFileSync(out, renderFigure(kind, files) + "\n");
}

export function main(argv: string[]): void {
  yargs(argv)
    .scriptName("plot-tool")
    .command(
      "plot <inputs..>",
      "render sweep CSVs as an SVG figure",
      (y) =>
        y
          .positional("inputs", {
            describe: "sweep CSV files (one series each)",
            type: "string",
            array: true,
            demandOption: true,
          })
          .option("kind", {
            describe: "which column to plot",
            choices: PLOT_KINDS,
            demandOption: true,
          })
          .option("out", {
            describe: "output SVG path",
            type: "string",
          }),
      (args) => {
        const kind = args.kind as PlotKind;
        const out = args.out ?? `${kind}.svg`;
        try {
          runPlot(kind, out, args.inputs as string[]);
        } catch (e) {
          console.error(`error: ${(e as Error).message}`);
          process.exit(1);
        }
        console.log(`wrote ${out}`);
      },
    )
    .demandCommand(1)
    .strict()
    .fail((msg, err) => {
      console.error(err ? `error: ${err.message}` : msg);
      process.exit(1);
    })
    .parseSync();
}

const isDirectRun =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (isDirectRun) {
  main(hideBin(process.argv));
}
