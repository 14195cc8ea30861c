/**
 * SVG figure rendering for sweep files.
 *
 * Every plotted point is a <circle> carrying data-x / data-y attributes
 * with the *verbatim* cell text from the CSV, so a figure can be checked
 * against (or reduced back to) its source values without any float
 * round-tripping.
 */

import { scaleLinear } from "d3-scale";
import type { ColumnName, SweepFile, SweepRow } from "./csv.js";

export type PlotKind = "ber" | "throughput" | "latency_avg" | "latency_max";

export const PLOT_KINDS: PlotKind[] = [
  "ber",
  "throughput",
  "latency_avg",
  "latency_max",
];

interface KindSpec {
  column: ColumnName;
  /** extra dashed series drawn when the column has values (model curves) */
  modelColumn?: ColumnName;
  yLabel: string;
  logY: boolean;
}

const KIND_SPECS: Record<PlotKind, KindSpec> = {
  ber: { column: "ber", yLabel: "bit error rate", logY: true },
  throughput: {
    column: "throughput_bps",
    modelColumn: "t_hyb_theo_bps",
    yLabel: "throughput (bit/s)",
    logY: false,
  },
  latency_avg: {
    column: "latency_avg_s",
    yLabel: "average latency (s)",
    logY: true,
  },
  latency_max: { column: "latency_max_s", yLabel: "max latency (s)", logY: true },
};

const PALETTE = ["#1f6fb2", "#d1495b", "#3a7d44", "#8f5aa5", "#c98a2b", "#4a4a4a"];

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { left: 78, right: 24, top: 42, bottom: 56 };

interface Point {
  x: number;
  y: number;
  rawX: string;
  rawY: string;
}

interface Series {
  label: string;
  color: string;
  dashed: boolean;
  points: Point[];
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/"/g, "&quot;");
}

function collectPoints(
  file: SweepFile,
  column: ColumnName,
  logY: boolean,
): Point[] {
  const pts: Point[] = [];
  for (const row of file.rows) {
    const y = row.value[column];
    const x = row.value.ebno_db;
    if (x === null || y === null) continue;
    if (logY && y <= 0) continue; // zero counts cannot sit on a log axis
    pts.push({ x, y, rawX: row.raw.ebno_db, rawY: row.raw[column] });
  }
  return pts.sort((a, b) => a.x - b.x);
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    const v = 10 ** e;
    if (v >= lo / 1.0001 && v <= hi * 1.0001) ticks.push(v);
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function formatTick(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e5)) {
    const e = Math.round(Math.log10(Math.abs(v)));
    if (Math.abs(v - 10 ** e) / 10 ** e < 1e-9) return `1e${e}`;
    return v.toExponential(1);
  }
  return `${Number(v.toPrecision(6))}`;
}

function formatLogTick(v: number): string {
  return `1e${Math.round(Math.log10(v))}`;
}

export function renderFigure(kind: PlotKind, files: SweepFile[]): string {
  const spec = KIND_SPECS[kind];
  const series: Series[] = [];
  files.forEach((file, i) => {
    const color = PALETTE[i % PALETTE.length];
    const main = collectPoints(file, spec.column, spec.logY);
    if (main.length === 0) {
      throw new Error(
        `${file.path}: column ${spec.column} has no plottable values`,
      );
    }
    series.push({ label: file.label, color, dashed: false, points: main });
    if (spec.modelColumn) {
      const model = collectPoints(file, spec.modelColumn, spec.logY);
      if (model.length > 0) {
        series.push({
          label: `${file.label} model`,
          color,
          dashed: true,
          points: model,
        });
      }
    }
  });

  const allPts = series.flatMap((s) => s.points);
  const xs = allPts.map((p) => p.x);
  const ys = allPts.map((p) => p.y);
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);

  const xScale = scaleLinear()
    .domain([xLo, xHi])
    .range([MARGIN.left, WIDTH - MARGIN.right])
    .nice();
  // a log axis is a linear axis in log10(y)
  const [dLo, dHi] = spec.logY
    ? [Math.log10(yLo), Math.log10(yHi)]
    : [yLo === yHi ? yLo - 1 : yLo, yLo === yHi ? yHi + 1 : yHi];
  const pad = spec.logY ? Math.max(0.05 * (dHi - dLo), 0.05) : 0.05 * (dHi - dLo);
  const yScale = scaleLinear()
    .domain([dLo - pad, dHi + pad])
    .range([HEIGHT - MARGIN.bottom, MARGIN.top]);
  const yPos = (v: number) => yScale(spec.logY ? Math.log10(v) : v);

  const xTicks = xScale.ticks(7);
  const yTicks = spec.logY
    ? logTicks(10 ** yScale.domain()[0], 10 ** yScale.domain()[1])
    : yScale.ticks(6);

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12" ` +
      `data-kind="${kind}" data-column="${spec.column}">`,
  );
  out.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  out.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">` +
      `${esc(spec.yLabel)} vs Eb/N0</text>`,
  );

  // grid + axes
  for (const t of xTicks) {
    const px = xScale(t).toFixed(2);
    out.push(
      `<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${HEIGHT - MARGIN.bottom}" stroke="#e4e4e4"/>`,
    );
    out.push(
      `<text x="${px}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle">${formatTick(t)}</text>`,
    );
  }
  for (const t of yTicks) {
    const py = yPos(t).toFixed(2);
    out.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" y2="${py}" stroke="#e4e4e4"/>`,
    );
    out.push(
      `<text x="${MARGIN.left - 8}" y="${Number(py) + 4}" text-anchor="end">` +
        `${spec.logY ? formatLogTick(t) : formatTick(t)}</text>`,
    );
  }
  out.push(
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" stroke="black"/>`,
  );
  out.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${HEIGHT - MARGIN.bottom}" stroke="black"/>`,
  );
  out.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 12}" text-anchor="middle">Eb/N0 (dB)</text>`,
  );
  out.push(
    `<text transform="rotate(-90 16 ${HEIGHT / 2})" x="16" y="${HEIGHT / 2}" text-anchor="middle">` +
      `${esc(spec.yLabel)}${spec.logY ? " (log scale)" : ""}</text>`,
  );

  // data
  series.forEach((s, si) => {
    const path = s.points
      .map((p, i) => `${i === 0 ? "M" : "L"}${xScale(p.x).toFixed(2)} ${yPos(p.y).toFixed(2)}`)
      .join(" ");
    out.push(
      `<path d="${path}" fill="none" stroke="${s.color}" stroke-width="1.6"` +
        `${s.dashed ? ' stroke-dasharray="6 4"' : ""} data-series="${esc(s.label)}"/>`,
    );
    for (const p of s.points) {
      out.push(
        `<circle cx="${xScale(p.x).toFixed(2)}" cy="${yPos(p.y).toFixed(2)}" r="3.4" ` +
          `fill="${s.dashed ? "white" : s.color}" stroke="${s.color}" ` +
          `data-series="${esc(s.label)}" data-x="${esc(p.rawX)}" data-y="${esc(p.rawY)}"/>`,
      );
    }
    const ly = MARGIN.top + 14 + 16 * si;
    const lx = WIDTH - MARGIN.right - 200;
    out.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 26}" y2="${ly - 4}" stroke="${s.color}" ` +
        `stroke-width="1.6"${s.dashed ? ' stroke-dasharray="6 4"' : ""}/>`,
    );
    out.push(`<text x="${lx + 32}" y="${ly}">${esc(s.label)}</text>`);
  });

  out.push("</svg>");
  return out.join("\n");
}
