// ── headless SVG chart rendering ──────────────────────────────────────────────
//
// Builds standalone SVG documents as strings (no DOM).  Every document carries
// self-describing root attributes (data-figure, data-x-scale, data-y-scale,
// data-series-count, ...) so downstream checks can assert structure without an
// SVG renderer.

import { format, interpolateViridis, scaleLinear, scaleLog, schemeTableau10 } from "d3";

export type ScaleKind = "linear" | "log";

export interface PlotSeries {
  name: string;
  points: Array<[number, number]>;
  dashed?: boolean;
  color?: string;
}

export interface Marker {
  x: number;
  y: number;
  label: string;
}

export interface Band {
  x0: number;
  x1: number;
  label: string;
}

export interface LineChartOptions {
  figureId: string;
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: ScaleKind;
  yScale: ScaleKind;
  series: PlotSeries[];
  markers?: Marker[];
  bands?: Band[];
  bandCount?: number;
}

export interface HeatmapCell {
  x: number;
  y: number;
  value: number;
  flagged: boolean;
}

export interface HeatmapOptions {
  figureId: string;
  title: string;
  xLabel: string;
  yLabel: string;
  cells: HeatmapCell[];
  valueLabel: string;
}

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 36, bottom: 58, left: 76 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;
const FONT = 'font-family="system-ui, sans-serif"';

const fmtTick = format("~g");

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function finitePoints(series: PlotSeries[]): Array<[number, number]> {
  return series.flatMap((s) => s.points.filter((p) => Number.isFinite(p[0]) && Number.isFinite(p[1])));
}

type Mapper = (v: number) => number;

interface Axis {
  map: Mapper;
  ticks: number[];
  tickLabel: (v: number) => string;
}

function makeAxis(kind: ScaleKind, values: number[], range: [number, number], what: string): Axis {
  if (values.length === 0) {
    throw new Error(`no finite data for ${what} axis`);
  }
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (kind === "log") {
    if (lo <= 0) {
      throw new Error(`log ${what} axis requires positive values (min was ${lo})`);
    }
    const scale = scaleLog().domain([lo, hi]).range(range);
    const ticks: number[] = [];
    for (let e = Math.ceil(Math.log10(lo) - 1e-9); e <= Math.floor(Math.log10(hi) + 1e-9); e++) {
      ticks.push(10 ** e);
    }
    return {
      map: (v) => scale(v),
      ticks: ticks.length >= 2 ? ticks : scale.ticks(4),
      tickLabel: (v) => {
        const e = Math.round(Math.log10(v));
        return Math.abs(e) >= 3 && 10 ** e === v ? `1e${e}` : fmtTick(v);
      },
    };
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const scale = scaleLinear().domain([lo, hi]).range(range).nice();
  return { map: (v) => scale(v), ticks: scale.ticks(6), tickLabel: fmtTick };
}

function axesSvg(x: Axis, y: Axis, xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = MARGIN.left + PLOT_W;
  const y0 = MARGIN.top + PLOT_H;
  const y1 = MARGIN.top;
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333"/>`);
  for (const t of x.ticks) {
    const px = x.map(t);
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    parts.push(`<line x1="${px.toFixed(1)}" y1="${y0}" x2="${px.toFixed(1)}" y2="${y0 + 5}" stroke="#333"/>`);
    parts.push(
      `<text x="${px.toFixed(1)}" y="${y0 + 20}" text-anchor="middle" font-size="12" ${FONT}>${esc(x.tickLabel(t))}</text>`,
    );
  }
  for (const t of y.ticks) {
    const py = y.map(t);
    if (py < y1 - 0.5 || py > y0 + 0.5) continue;
    parts.push(`<line x1="${x0 - 5}" y1="${py.toFixed(1)}" x2="${x0}" y2="${py.toFixed(1)}" stroke="#333"/>`);
    parts.push(
      `<text x="${x0 - 8}" y="${(py + 4).toFixed(1)}" text-anchor="end" font-size="12" ${FONT}>${esc(y.tickLabel(t))}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="14" ${FONT}>${esc(xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="14" ${FONT} transform="rotate(-90 20 ${(y0 + y1) / 2})">${esc(yLabel)}</text>`,
  );
  return parts.join("\n");
}

function pathFor(points: Array<[number, number]>, x: Axis, y: Axis): string {
  let d = "";
  let penDown = false;
  for (const [px, py] of points) {
    if (!Number.isFinite(px) || !Number.isFinite(py)) {
      penDown = false;
      continue;
    }
    d += `${penDown ? "L" : "M"}${x.map(px).toFixed(2)},${y.map(py).toFixed(2)}`;
    penDown = true;
  }
  return d;
}

function document(figureId: string, title: string, attrs: Record<string, string>, body: string): string {
  const extra = Object.entries(attrs)
    .map(([k, v]) => `${k}="${esc(v)}"`)
    .join(" ");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" data-figure="${esc(figureId)}" ${extra}>`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="26" text-anchor="middle" font-size="16" font-weight="bold" ${FONT}>${esc(title)}</text>`,
    body,
    `</svg>`,
    ``,
  ].join("\n");
}

/** Render a multi-series line chart (optionally with markers and shaded
 *  x-interval bands) to an SVG string. */
export function renderLineChart(opts: LineChartOptions): string {
  const pts = finitePoints(opts.series);
  const x = makeAxis(opts.xScale, pts.map((p) => p[0]), [MARGIN.left, MARGIN.left + PLOT_W], "x");
  const y = makeAxis(opts.yScale, pts.map((p) => p[1]), [MARGIN.top + PLOT_H, MARGIN.top], "y");

  const parts: string[] = [];
  for (const band of opts.bands ?? []) {
    const bx0 = Math.max(MARGIN.left, Math.min(x.map(band.x0), x.map(band.x1)));
    const bx1 = Math.min(MARGIN.left + PLOT_W, Math.max(x.map(band.x0), x.map(band.x1)));
    parts.push(
      `<rect class="exclusion-band" data-band="${esc(band.label)}" x="${bx0.toFixed(1)}" y="${MARGIN.top}" width="${(bx1 - bx0).toFixed(1)}" height="${PLOT_H}" fill="#9aa0a6" fill-opacity="0.22"/>`,
    );
  }
  parts.push(axesSvg(x, y, opts.xLabel, opts.yLabel));
  opts.series.forEach((s, i) => {
    const color = s.color ?? schemeTableau10[i % schemeTableau10.length];
    const dash = s.dashed ? ' stroke-dasharray="6 4"' : "";
    parts.push(
      `<path class="series" data-name="${esc(s.name)}" d="${pathFor(s.points, x, y)}" fill="none" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    const ly = MARGIN.top + 14 + i * 18;
    const lx = MARGIN.left + PLOT_W - 10;
    parts.push(`<line x1="${lx - 150}" y1="${ly - 4}" x2="${lx - 124}" y2="${ly - 4}" stroke="${color}" stroke-width="2"${dash}/>`);
    parts.push(`<text class="legend-item" x="${lx - 118}" y="${ly}" font-size="11" ${FONT}>${esc(s.name)}</text>`);
  });
  for (const m of opts.markers ?? []) {
    const mx = x.map(m.x).toFixed(1);
    parts.push(
      `<line class="marker" x1="${mx}" y1="${MARGIN.top}" x2="${mx}" y2="${MARGIN.top + PLOT_H}" stroke="#555" stroke-width="1" stroke-dasharray="3 3"/>`,
    );
    parts.push(`<circle cx="${mx}" cy="${y.map(m.y).toFixed(1)}" r="4" fill="#555"/>`);
    parts.push(
      `<text x="${(x.map(m.x) + 6).toFixed(1)}" y="${(y.map(m.y) - 8).toFixed(1)}" font-size="11" ${FONT}>${esc(m.label)}</text>`,
    );
  }

  const attrs: Record<string, string> = {
    "data-x-scale": opts.xScale,
    "data-y-scale": opts.yScale,
    "data-series-count": String(opts.series.length),
  };
  if (opts.bandCount !== undefined) {
    attrs["data-band-count"] = String(opts.bandCount);
  }
  return document(opts.figureId, opts.title, attrs, parts.join("\n"));
}

/** Render a rectangular heatmap over the distinct (x, y) values present in
 *  `cells`; flagged cells get a contrasting outline. */
export function renderHeatmap(opts: HeatmapOptions): string {
  if (opts.cells.length === 0) {
    throw new Error("heatmap has no cells");
  }
  const xs = [...new Set(opts.cells.map((c) => c.x))].sort((a, b) => a - b);
  const ys = [...new Set(opts.cells.map((c) => c.y))].sort((a, b) => a - b);
  const cw = PLOT_W / xs.length;
  const ch = PLOT_H / ys.length;
  const xi = new Map(xs.map((v, i) => [v, i]));
  const yi = new Map(ys.map((v, i) => [v, i]));
  const values = opts.cells.map((c) => c.value).filter((v) => Number.isFinite(v));
  const vmin = Math.min(...values);
  const vmax = Math.max(...values);
  const span = vmax - vmin || 1;

  const parts: string[] = [];
  let flagged = 0;
  for (const c of opts.cells) {
    const ix = xi.get(c.x) ?? 0;
    const iy = yi.get(c.y) ?? 0;
    const px = MARGIN.left + ix * cw;
    // y axis grows upward: largest value in the top row.
    const py = MARGIN.top + (ys.length - 1 - iy) * ch;
    const fill = Number.isFinite(c.value) ? interpolateViridis((c.value - vmin) / span) : "#ddd";
    const flagAttr = c.flagged ? ' data-flagged="1" stroke="#d62728" stroke-width="1"' : "";
    if (c.flagged) flagged++;
    parts.push(
      `<rect class="cell" x="${px.toFixed(2)}" y="${py.toFixed(2)}" width="${cw.toFixed(2)}" height="${ch.toFixed(2)}" fill="${fill}"${flagAttr}/>`,
    );
  }

  // Tick labels on a handful of rows/columns.
  const fmtCoord = format(".5~g");
  const xTickIdx = [0, Math.floor(xs.length / 2), xs.length - 1];
  const yTickIdx = [0, Math.floor(ys.length / 2), ys.length - 1];
  const y0 = MARGIN.top + PLOT_H;
  for (const i of new Set(xTickIdx)) {
    const px = MARGIN.left + (i + 0.5) * cw;
    parts.push(
      `<text x="${px.toFixed(1)}" y="${y0 + 18}" text-anchor="middle" font-size="11" ${FONT}>${fmtCoord(xs[i]!)}</text>`,
    );
  }
  for (const i of new Set(yTickIdx)) {
    const py = MARGIN.top + (ys.length - 1 - i + 0.5) * ch;
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${(py + 4).toFixed(1)}" text-anchor="end" font-size="11" ${FONT}>${fmtCoord(ys[i]!)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="14" ${FONT}>${esc(opts.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="14" ${FONT} transform="rotate(-90 20 ${MARGIN.top + PLOT_H / 2})">${esc(opts.yLabel)}</text>`,
  );

  // Horizontal colour ramp with min/max labels.
  const rampX = MARGIN.left + PLOT_W - 160;
  const rampY = MARGIN.top - 18;
  const stops = Array.from({ length: 11 }, (_, i) => {
    return `<stop offset="${i * 10}%" stop-color="${interpolateViridis(i / 10)}"/>`;
  }).join("");
  parts.push(`<defs><linearGradient id="ramp">${stops}</linearGradient></defs>`);
  parts.push(`<rect x="${rampX}" y="${rampY}" width="120" height="10" fill="url(#ramp)"/>`);
  parts.push(`<text x="${rampX - 5}" y="${rampY + 9}" text-anchor="end" font-size="10" ${FONT}>${fmtTick(vmin)}</text>`);
  parts.push(`<text x="${rampX + 125}" y="${rampY + 9}" font-size="10" ${FONT}>${fmtTick(vmax)} ${esc(opts.valueLabel)}</text>`);

  const attrs = {
    "data-x-scale": "linear",
    "data-y-scale": "linear",
    "data-cell-count": String(opts.cells.length),
    "data-flagged-count": String(flagged),
  };
  return document(opts.figureId, opts.title, attrs, parts.join("\n"));
}
