import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  SERIES_COLUMNS, SchemaError, impliedFieldMagnitude, loadSeries,
} from "../dist/series.js";

const FIXTURES = fileURLToPath(new URL("fixtures", import.meta.url));
const SERIES_TEXT = fs.readFileSync(path.join(FIXTURES, "series.csv"), "utf8");

function smallSeries(rows: string[]): string {
  return [SERIES_COLUMNS.join(","), ...rows].join("\n") + "\n";
}

const ROW0 = "0.0,0,0,0,1.0,0,0,0,1.0,0,0,0";
const ROW1 = "0.5,10,0,0,1.1,0.1,0,0,1.0,0,9.5,0.01";

describe("loadSeries", () => {
  it("parses the reference series into 12 equal-length columns", () => {
    const table = loadSeries(SERIES_TEXT);
    expect(Object.keys(table)).toHaveLength(12);
    const n = table.t.length;
    expect(n).toBe(101);
    for (const column of SERIES_COLUMNS) {
      expect(table[column]).toHaveLength(n);
    }
    expect(table.t[0]).toBe(0);
    expect(table.T[0]).toBe(1);
  });

  it("rejects a header missing a column, naming it", () => {
    const noDist = SERIES_TEXT.replace(",dist", "")
      .split("\n")
      .map((line, i) => (i === 0 ? line : line.slice(0, line.lastIndexOf(","))))
      .join("\n");
    expect(() => loadSeries(noDist)).toThrow(SchemaError);
    expect(() => loadSeries(noDist)).toThrow(/"dist"/);
  });

  it("rejects an unexpected column, naming it", () => {
    const extra = smallSeries([ROW0 + ",7", ROW1 + ",7"])
      .replace("dist", "dist,bogus");
    expect(() => loadSeries(extra)).toThrow(/"bogus"/);
  });

  it("rejects non-monotone t, naming the column and row", () => {
    const bad = smallSeries([ROW0, ROW1, ROW1]);
    expect(() => loadSeries(bad)).toThrow(/"t".*row 3/);
  });

  it("rejects a non-numeric cell, naming the column", () => {
    const bad = smallSeries([ROW0, ROW1.replace("1.1", "oops")]);
    expect(() => loadSeries(bad)).toThrow(/"oops" in column "T"/);
  });

  it("rejects an empty file", () => {
    expect(() => loadSeries("")).toThrow(SchemaError);
  });
});

describe("impliedFieldMagnitude", () => {
  it("recovers the driving field from the reference trajectory", () => {
    const eMag = impliedFieldMagnitude(loadSeries(SERIES_TEXT));
    expect(Math.abs(eMag - 20) / 20).toBeLessThan(0.01);
  });
});
