#!/usr/bin/env node
// plot violin <csv> -o fig.svg --group model,params
// plot heatmap <stats.csv> -o fig.svg
//
// Exit codes: 0 success, 2 schema/usage error, 3 I/O error.

import { readFileSync, writeFileSync } from "fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { SchemaError, parseRunCsv, parseStatsCsv } from "./csv";
import { heatmapSvg } from "./heatmap";
import { violinSvg } from "./violin";

function readOrDie(path: string): string {
  try {
    return readFileSync(path, "utf-8");
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    process.exit(3);
  }
}

function writeOrDie(path: string, content: string): void {
  try {
    writeFileSync(path, content);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    process.exit(3);
  }
}

function render<T>(fn: () => T): T {
  try {
    return fn();
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`error: ${err.message}`);
      process.exit(2);
    }
    throw err;
  }
}

yargs(hideBin(process.argv))
  .scriptName("plot")
  .command(
    "violin <csv>",
    "KDE violin figure of S per variant per group from a results CSV",
    (y) =>
      y
        .positional("csv", { type: "string", demandOption: true })
        .option("output", { alias: "o", type: "string", demandOption: true })
        .option("group", {
          type: "string",
          default: "model,params",
          describe: "comma-separated result columns forming the group key",
        })
        .option("variants", {
          type: "string",
          describe: "comma-separated variant labels to keep (default: all)",
        }),
    (argv) => {
      const rows = render(() => parseRunCsv(readOrDie(argv.csv)));
      const svg = render(() =>
        violinSvg(rows, {
          group: argv.group.split(",").map((s) => s.trim()).filter(Boolean),
          variants: argv.variants
            ? argv.variants.split(",").map((s) => s.trim()).filter(Boolean)
            : undefined,
        }),
      );
      writeOrDie(argv.output, svg);
    },
  )
  .command(
    "heatmap <csv>",
    "p-value and Cohen's d cells per group from a stats CSV",
    (y) =>
      y
        .positional("csv", { type: "string", demandOption: true })
        .option("output", { alias: "o", type: "string", demandOption: true }),
    (argv) => {
      const rows = render(() => parseStatsCsv(readOrDie(argv.csv)));
      writeOrDie(argv.output, render(() => heatmapSvg(rows)));
    },
  )
  .demandCommand(1, "specify a subcommand: violin or heatmap")
  .strict()
  .fail((msg, err) => {
    console.error(`error: ${msg ?? err.message}`);
    process.exit(2);
  })
  .parse();
