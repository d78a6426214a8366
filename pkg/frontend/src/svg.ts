/** Minimal deterministic SVG chart builder (no timestamps, fixed styles). */

export interface Scale {
  (value: number): number;
  ticks(): number[];
}

const FONT = 'font-family="Helvetica, Arial, sans-serif"';

export function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) return value.toExponential(2);
  return String(Number(value.toPrecision(6)));
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const raw = span / count;
  const mag = 10 ** Math.floor(Math.log10(raw));
  const step = [1, 2, 5, 10].find((s) => s * mag >= raw)! * mag;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span;
       v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

export function linearScale(
  lo: number, hi: number, outLo: number, outHi: number,
): Scale {
  const span = hi - lo || 1;
  const scale = ((v: number) =>
    outLo + ((v - lo) / span) * (outHi - outLo)) as Scale;
  scale.ticks = () => niceTicks(lo, hi);
  return scale;
}

export function logScale(
  lo: number, hi: number, outLo: number, outHi: number,
): Scale {
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const span = lhi - llo || 1;
  const scale = ((v: number) =>
    outLo + ((Math.log10(v) - llo) / span) * (outHi - outLo)) as Scale;
  scale.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(llo); e <= Math.floor(lhi); e += 1) {
      out.push(10 ** e);
    }
    return out.length >= 2 ? out : [lo, hi];
  };
  return scale;
}

export interface Curve {
  x: number[];
  y: number[];
  color: string;
  label: string;
  dash?: string;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: Scale;
  yScale: Scale;
  xLog?: boolean;
  yLog?: boolean;
  curves: Curve[];
  notes?: string[];
}

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { left: 70, right: 20, top: 40, bottom: 50 };

/** Render a line chart to a standalone SVG document string. */
export function lineChart(spec: ChartSpec): string {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
    `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="22" ${FONT} font-size="15" ` +
    `text-anchor="middle">${spec.title}</text>`,
  );
  // axes + ticks
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`,
  );
  for (const t of spec.xScale.ticks()) {
    const px = spec.xScale(t);
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    parts.push(
      `<line x1="${px.toFixed(2)}" y1="${y0}" x2="${px.toFixed(2)}" ` +
      `y2="${y0 + 5}" stroke="black"/>`,
      `<text x="${px.toFixed(2)}" y="${y0 + 18}" ${FONT} font-size="11" ` +
      `text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of spec.yScale.ticks()) {
    const py = spec.yScale(t);
    if (py < y1 - 0.5 || py > y0 + 0.5) continue;
    parts.push(
      `<line x1="${x0 - 5}" y1="${py.toFixed(2)}" x2="${x0}" ` +
      `y2="${py.toFixed(2)}" stroke="black"/>`,
      `<text x="${x0 - 8}" y="${(py + 4).toFixed(2)}" ${FONT} ` +
      `font-size="11" text-anchor="end">${fmt(t)}</text>`,
      `<line x1="${x0}" y1="${py.toFixed(2)}" x2="${x1}" ` +
      `y2="${py.toFixed(2)}" stroke="#dddddd" stroke-width="0.5"/>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 12}" ${FONT} font-size="13" ` +
    `text-anchor="middle">${spec.xLabel}</text>`,
    `<text x="18" y="${(y0 + y1) / 2}" ${FONT} font-size="13" ` +
    `text-anchor="middle" transform="rotate(-90 18 ${(y0 + y1) / 2})">` +
    `${spec.yLabel}</text>`,
  );
  // curves
  for (const curve of spec.curves) {
    const pts = curve.x
      .map((vx, i) => [spec.xScale(vx), spec.yScale(curve.y[i])])
      .filter(([px, py]) => Number.isFinite(px) && Number.isFinite(py))
      .map(([px, py]) => `${px.toFixed(2)},${py.toFixed(2)}`)
      .join(" ");
    const dash = curve.dash ? ` stroke-dasharray="${curve.dash}"` : "";
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${curve.color}" ` +
      `stroke-width="1.6"${dash}/>`,
    );
  }
  // legend
  spec.curves.forEach((curve, i) => {
    const ly = y1 + 16 + 18 * i;
    const dash = curve.dash ? ` stroke-dasharray="${curve.dash}"` : "";
    parts.push(
      `<line x1="${x0 + 12}" y1="${ly}" x2="${x0 + 42}" y2="${ly}" ` +
      `stroke="${curve.color}" stroke-width="1.6"${dash}/>`,
      `<text x="${x0 + 48}" y="${ly + 4}" ${FONT} font-size="12">` +
      `${curve.label}</text>`,
    );
  });
  (spec.notes ?? []).forEach((note, i) => {
    parts.push(
      `<text x="${x1 - 6}" y="${y0 - 10 - 16 * i}" ${FONT} font-size="12" ` +
      `text-anchor="end">${note}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Five-stop dark-blue-to-yellow colormap on [0, 1]. */
export function heatColor(u: number): string {
  const stops: [number, number, number][] = [
    [13, 8, 135], [126, 3, 168], [204, 71, 120], [248, 149, 64],
    [240, 249, 33],
  ];
  const clamped = Math.min(1, Math.max(0, u));
  const pos = clamped * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(pos));
  const frac = pos - i;
  const mix = stops[i].map((c, k) =>
    Math.round(c + frac * (stops[i + 1][k] - c)));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}

export interface HeatPanel {
  title: string;
  xLabel: string;
  yLabel: string;
  /** values[i][j]: i along x, j along y; drawn as equal-size cells. */
  values: number[][];
  xCoords: number[];
  yCoords: number[];
}

/** Render side-by-side heatmap panels sharing one color range per panel. */
export function heatmapFigure(title: string, panels: HeatPanel[]): string {
  const panelSize = 300;
  const pad = 60;
  const width = pad + panels.length * (panelSize + pad);
  const height = panelSize + 110;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${width / 2}" y="24" ${FONT} font-size="15" ` +
    `text-anchor="middle">${title}</text>`,
  );
  panels.forEach((panel, p) => {
    const ox = pad + p * (panelSize + pad);
    const oy = 50;
    const n1 = panel.values.length;
    const n2 = panel.values[0].length;
    const vmax = Math.max(
      1e-300, ...panel.values.map((row) => Math.max(...row)));
    const cw = panelSize / n1;
    const ch = panelSize / n2;
    for (let i = 0; i < n1; i += 1) {
      for (let j = 0; j < n2; j += 1) {
        // y axis points up: row j = 0 is the lowest coordinate
        const color = heatColor(panel.values[i][j] / vmax);
        parts.push(
          `<rect x="${(ox + i * cw).toFixed(2)}" ` +
          `y="${(oy + panelSize - (j + 1) * ch).toFixed(2)}" ` +
          `width="${(cw + 0.05).toFixed(2)}" ` +
          `height="${(ch + 0.05).toFixed(2)}" fill="${color}"/>`,
        );
      }
    }
    parts.push(
      `<rect x="${ox}" y="${oy}" width="${panelSize}" ` +
      `height="${panelSize}" fill="none" stroke="black"/>`,
      `<text x="${ox + panelSize / 2}" y="${oy - 8}" ${FONT} ` +
      `font-size="13" text-anchor="middle">${panel.title}</text>`,
      `<text x="${ox + panelSize / 2}" y="${oy + panelSize + 34}" ${FONT} ` +
      `font-size="12" text-anchor="middle">${panel.xLabel}</text>`,
      `<text x="${ox - 40}" y="${oy + panelSize / 2}" ${FONT} ` +
      `font-size="12" text-anchor="middle" transform="rotate(-90 ` +
      `${ox - 40} ${oy + panelSize / 2})">${panel.yLabel}</text>`,
    );
    const xt = [panel.xCoords[0], panel.xCoords[n1 - 1]];
    const yt = [panel.yCoords[0], panel.yCoords[n2 - 1]];
    parts.push(
      `<text x="${ox}" y="${oy + panelSize + 16}" ${FONT} font-size="11" ` +
      `text-anchor="start">${fmt(xt[0])}</text>`,
      `<text x="${ox + panelSize}" y="${oy + panelSize + 16}" ${FONT} ` +
      `font-size="11" text-anchor="end">${fmt(xt[1])}</text>`,
      `<text x="${ox - 4}" y="${oy + panelSize}" ${FONT} font-size="11" ` +
      `text-anchor="end">${fmt(yt[0])}</text>`,
      `<text x="${ox - 4}" y="${oy + 10}" ${FONT} font-size="11" ` +
      `text-anchor="end">${fmt(yt[1])}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
