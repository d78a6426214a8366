/** Static report generation from simulator output files.
 *
 * Consumes series.csv (+ optional snapshot and verdict files) and writes
 * one SVG figure per panel plus an index.html. Rendering is read-only
 * with respect to its inputs and fully deterministic: fixed styles, no
 * timestamps, numbers formatted the same way on every run.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import {
  SeriesTable, impliedFieldMagnitude, loadSeries, rowNorm,
} from "./series.js";
import { Snapshot, axisCoords, centralSlice, readSnapshot } from "./snapshot.js";
import { Verdict, parseVerdict, temperatureOverlay } from "./verdict.js";
import {
  HEIGHT, MARGIN, WIDTH, fmt, heatmapFigure, linearScale, lineChart,
  logScale,
} from "./svg.js";

export type PanelName =
  | "velocity_tracking"
  | "temperature_growth"
  | "runaway_ratio"
  | "friction_decay"
  | "snapshot_slice";

export const ALL_PANELS: PanelName[] = [
  "velocity_tracking", "temperature_growth", "runaway_ratio",
  "friction_decay", "snapshot_slice",
];

export interface ReportSpec {
  seriesPath: string;
  snapshotPath?: string;
  verdictPath?: string;
  outDir: string;
  /** Panels to render; defaults to all (snapshot panel skipped without
   * a snapshot file). */
  panels?: PanelName[];
}

export interface ReportResult {
  figures: string[];
  indexPath: string;
  skipped: PanelName[];
}

const X0 = MARGIN.left;
const X1 = WIDTH - MARGIN.right;
const Y0 = HEIGHT - MARGIN.bottom;
const Y1 = MARGIN.top;

function xsc(lo: number, hi: number) {
  return linearScale(lo, hi, X0, X1);
}

function ysc(lo: number, hi: number) {
  return linearScale(lo, hi, Y0, Y1);
}

function velocityFigure(table: SeriesTable, eMag: number): string {
  const speed = rowNorm(table, "Vx", "Vy", "Vz");
  const t = table.t;
  const line = t.map((tt) => eMag * tt);
  const hi = Math.max(...speed, ...line) * 1.05 || 1;
  return lineChart({
    title: "Bulk speed tracks the field",
    xLabel: "t",
    yLabel: "|V|",
    xScale: xsc(t[0], t[t.length - 1]),
    yScale: ysc(0, hi),
    curves: [
      { x: t, y: speed, color: "#1f4e9c", label: "|V|(t)" },
      { x: t, y: line, color: "#c04a18", label: `|E| t, |E| = ${fmt(eMag)}`,
        dash: "6,4" },
    ],
  });
}

function temperatureFigure(
  table: SeriesTable, eMag: number,
  overlay: { a: string; alpha: string },
): string {
  const t = table.t;
  const a = Number(overlay.a);
  const alpha = Number(overlay.alpha);
  const fitted = t.map((tt) => a + alpha * Math.log(1 + eMag * tt));
  const lo = Math.min(...table.T, ...fitted);
  const hi = Math.max(...table.T, ...fitted);
  const pad = 0.05 * (hi - lo) || 0.1;
  return lineChart({
    title: "Temperature grows logarithmically",
    xLabel: "t",
    yLabel: "T",
    xScale: xsc(t[0], t[t.length - 1]),
    yScale: ysc(lo - pad, hi + pad),
    curves: [
      { x: t, y: table.T, color: "#1f4e9c", label: "T(t)" },
      { x: t, y: fitted, color: "#c04a18", dash: "6,4",
        label: `a + &#945; ln(1+|E|t), a = ${overlay.a}, ` +
               `&#945; = ${overlay.alpha}` },
    ],
  });
}

function ratioFigure(table: SeriesTable): string {
  const t = table.t;
  const hi = Math.max(...table.ratio) * 1.05 || 1;
  return lineChart({
    title: "Runaway ratio",
    xLabel: "t",
    yLabel: "|V| / sqrt(T)",
    xScale: xsc(t[0], t[t.length - 1]),
    yScale: ysc(0, hi),
    curves: [
      { x: t, y: table.ratio, color: "#1f4e9c", label: "|V|/&#8730;T" },
    ],
  });
}

function frictionFigure(table: SeriesTable): string {
  const mag = rowNorm(table, "Rx", "Ry", "Rz");
  const pairs = table.t
    .map((tt, i) => [tt, mag[i]])
    .filter(([tt, r]) => tt > 0 && r > 0);
  const t = pairs.map(([tt]) => tt);
  const r = pairs.map(([, rr]) => rr);
  const tEnd = t[t.length - 1];
  const rEnd = r[r.length - 1];
  const guide = t.map((tt) => rEnd * (tEnd / tt) ** 2);
  const lo = Math.min(...r, ...guide);
  const hi = Math.max(...r, ...guide);
  return lineChart({
    title: "Friction decay",
    xLabel: "t",
    yLabel: "|R|",
    xScale: logScale(t[0], tEnd, X0, X1),
    yScale: logScale(lo / 1.5, hi * 1.5, Y0, Y1),
    xLog: true,
    yLog: true,
    curves: [
      { x: t, y: r, color: "#1f4e9c", label: "|R|(t)" },
      { x: t, y: guide, color: "#c04a18", dash: "6,4",
        label: "slope &#8722;2 guide" },
    ],
  });
}

function snapshotFigure(snap: Snapshot): string {
  const slice = centralSlice(snap);
  const w1 = axisCoords(snap, 0);
  const w2 = axisCoords(snap, 1);
  const scale = snap.T ** 1.5;
  const sqrtT = Math.sqrt(snap.T);
  const frameSlice = slice.map((row) => row.map((v) => v * scale));
  const v1 = w1.map((w) => (w - snap.V[0]) / sqrtT);
  const v2 = w2.map((w) => (w - snap.V[1]) / sqrtT);
  return heatmapFigure(
    `Central v&#8321;&#8211;v&#8322; slice at t = ${fmt(snap.t)}`,
    [
      { title: "lab: F(w)", xLabel: "w&#8321;", yLabel: "w&#8322;",
        values: slice, xCoords: w1, yCoords: w2 },
      { title: "frame: T<tspan dy=\"-4\" font-size=\"9\">3/2</tspan>" +
          "<tspan dy=\"4\"> F(V + &#8730;T v)</tspan>",
        xLabel: "v&#8321;", yLabel: "v&#8322;",
        values: frameSlice, xCoords: v1, yCoords: v2 },
    ],
  );
}

function indexHtml(
  figures: { file: string; caption: string }[],
  skipped: PanelName[],
  verdict: Verdict | null,
  overlay: { a: string; alpha: string },
  eMag: number,
): string {
  const parts: string[] = [];
  parts.push(
    "<!DOCTYPE html>",
    '<html lang="en"><head><meta charset="utf-8">',
    "<title>Runaway simulation report</title>",
    "<style>body{font-family:Helvetica,Arial,sans-serif;margin:2em;" +
    "max-width:60em}table{border-collapse:collapse}" +
    "td,th{border:1px solid #999;padding:0.25em 0.6em;text-align:left}" +
    "figure{margin:1.5em 0}</style>",
    "</head><body>",
    "<h1>Runaway simulation report</h1>",
    "<h2>Fit parameters</h2>",
    "<ul>",
    `<li>temperature overlay: a = ${overlay.a}, alpha = ${overlay.alpha}` +
    "</li>",
    `<li>field magnitude used for overlays: |E| = ${fmt(eMag)}</li>`,
    "</ul>",
  );
  if (verdict) {
    parts.push("<h2>Verdict</h2>", "<table>",
               "<tr><th>key</th><th>value</th></tr>");
    for (const [key, value] of verdict) {
      parts.push(`<tr><td>${key}</td><td>${value}</td></tr>`);
    }
    parts.push("</table>");
  } else {
    parts.push("<p>No verdict file supplied; overlay parameters were " +
               "fitted from the series.</p>");
  }
  parts.push("<h2>Figures</h2>");
  for (const fig of figures) {
    parts.push(
      "<figure>",
      `<img src="${fig.file}" alt="${fig.caption}">`,
      `<figcaption>${fig.caption}</figcaption>`,
      "</figure>",
    );
  }
  for (const panel of skipped) {
    parts.push(`<p><em>Panel ${panel} skipped: no snapshot file ` +
               "supplied.</em></p>");
  }
  parts.push("</body></html>");
  return parts.join("\n") + "\n";
}

/** Least-squares (a, alpha) of T against ln(1+|E|t), used when no
 * verdict file provides the overlay. */
function fitTemperature(
  table: SeriesTable, eMag: number,
): { a: string; alpha: string } {
  const x = table.t.map((tt) => Math.log(1 + eMag * tt));
  const y = table.T;
  const n = x.length;
  const mx = x.reduce((s, v) => s + v, 0) / n;
  const my = y.reduce((s, v) => s + v, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i += 1) {
    sxx += (x[i] - mx) ** 2;
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const alpha = sxx > 0 ? sxy / sxx : 0;
  const a = my - alpha * mx;
  return { a: fmt(a), alpha: fmt(alpha) };
}

export function renderReport(spec: ReportSpec): ReportResult {
  const table = loadSeries(fs.readFileSync(spec.seriesPath, "utf8"));
  const snapshot = spec.snapshotPath
    ? readSnapshot(fs.readFileSync(spec.snapshotPath))
    : null;
  const verdict = spec.verdictPath
    ? parseVerdict(fs.readFileSync(spec.verdictPath, "utf8"))
    : null;
  const eMag = impliedFieldMagnitude(table);
  const overlay = verdict
    ? temperatureOverlay(verdict)
    : fitTemperature(table, eMag);

  const selected = spec.panels ?? ALL_PANELS;
  fs.mkdirSync(spec.outDir, { recursive: true });
  const figures: { file: string; caption: string }[] = [];
  const skipped: PanelName[] = [];

  const emit = (name: PanelName, caption: string, svg: () => string) => {
    if (!selected.includes(name)) return;
    const file = `${name}.svg`;
    fs.writeFileSync(path.join(spec.outDir, file), svg());
    figures.push({ file, caption });
  };

  emit("velocity_tracking", "Bulk speed |V|(t) with the |E|t line",
       () => velocityFigure(table, eMag));
  emit("temperature_growth",
       "Temperature with the fitted logarithmic growth law",
       () => temperatureFigure(table, eMag, overlay));
  emit("runaway_ratio", "Runaway ratio |V|/sqrt(T)",
       () => ratioFigure(table));
  emit("friction_decay", "Friction magnitude on log-log axes",
       () => frictionFigure(table));
  if (snapshot) {
    emit("snapshot_slice",
         "Central velocity slice in lab and frame coordinates",
         () => snapshotFigure(snapshot));
  } else if (selected.includes("snapshot_slice")) {
    skipped.push("snapshot_slice");
  }

  const indexPath = path.join(spec.outDir, "index.html");
  fs.writeFileSync(
    indexPath, indexHtml(figures, skipped, verdict, overlay, eMag));
  return {
    figures: figures.map((f) => path.join(spec.outDir, f.file)),
    indexPath,
    skipped,
  };
}
