#!/usr/bin/env node
/** render-report --series series.csv [--snapshot snap.bin]
 *                 [--verdict verdict.txt] --out DIR
 *
 * Exit codes: 0 report written, 2 bad arguments or unreadable/invalid
 * input files.
 */

import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { renderReport } from "./report.js";

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        series: { type: "string" },
        snapshot: { type: "string" },
        verdict: { type: "string" },
        out: { type: "string" },
      },
      allowPositionals: false,
    });
  } catch (err) {
    console.error(`render-report: ${(err as Error).message}`);
    return 2;
  }
  const { series, snapshot, verdict, out } = args.values;
  if (!series || !out) {
    console.error(
      "usage: render-report --series series.csv [--snapshot snap.bin] " +
      "[--verdict verdict.txt] --out DIR");
    return 2;
  }
  try {
    const result = renderReport({
      seriesPath: series,
      snapshotPath: snapshot,
      verdictPath: verdict,
      outDir: out,
    });
    for (const figure of result.figures) {
      console.log(`wrote ${figure}`);
    }
    for (const panel of result.skipped) {
      console.log(`skipped ${panel}: no snapshot file supplied`);
    }
    console.log(`wrote ${result.indexPath}`);
    return 0;
  } catch (err) {
    console.error(`render-report: ${(err as Error).message}`);
    return 2;
  }
}

if (process.argv[1]
    && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
