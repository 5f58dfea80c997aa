/**
 * SVG line figures over harness result tables: one series per scheme,
 * mean rate on the y axis, the sweep variable on the x axis.
 *
 * Output is plain deterministic SVG text so re-renders are byte-stable.
 */

import { CsvFormatError, ResultRow } from "./csv.js";

export type FigureKind = "offline_q" | "online_q" | "online_l";

export interface SeriesStyle {
  label: string;
  color: string;
  marker: "circle" | "square" | "diamond" | "triangle" | "cross" | "plus";
}

export interface FigureSpec {
  kind: FigureKind;
  title?: string;
  /** Overrides / additions to the kind's default scheme -> style map. */
  styles?: Record<string, Partial<SeriesStyle>>;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
  "#17becf", "#e377c2", "#7f7f7f", "#bcbd22"];
const MARKERS: SeriesStyle["marker"][] = ["circle", "square", "diamond",
  "triangle", "cross", "plus"];

const SCHEME_LABELS: Record<string, string> = {
  upper_bound: "Upper bound (ideal cancellation)",
  dynamic_joint: "Dynamic SC, joint allocation",
  static_joint: "Static SC, joint allocation",
  dynamic_constant: "Dynamic SC, constant transfer",
  static_constant: "Static SC, constant transfer",
  random_arrival: "Random energy arrivals",
  ott_dynamic: "Dynamic SC, observe-then-transmit",
  ott_static: "Static SC, observe-then-transmit",
  no_observe_dynamic: "Dynamic SC, no observation",
  no_observe_static: "Static SC, no observation",
};

const KIND_SETTINGS: Record<FigureKind, { sweepName: string; xLabel: string; title: string }> = {
  offline_q: {
    sweepName: "eap_power_mw",
    xLabel: "EAP transmit power Q (mW)",
    title: "Full-CSI schemes vs transmit power",
  },
  online_q: {
    sweepName: "eap_power_mw",
    xLabel: "EAP transmit power Q (mW)",
    title: "Causal-CSI schemes vs transmit power",
  },
  online_l: {
    sweepName: "window_size",
    xLabel: "Window size L (slots)",
    title: "Causal-CSI schemes vs window size",
  },
};

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 72 };

interface Series {
  scheme: string;
  style: SeriesStyle;
  points: { x: number; y: number }[];
}

function fmt(value: number): string {
  return value.toFixed(2).replace(/\.00$/, "");
}

/** Round tick spacing to a 1/2/5 decade step covering roughly `count` ticks. */
function tickStep(span: number, count: number): number {
  const raw = span / Math.max(count, 1);
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= raw) return mult * power;
  }
  return 10 * power;
}

function ticks(min: number, max: number, count: number): number[] {
  if (max <= min) return [min];
  const step = tickStep(max - min, count);
  const out: number[] = [];
  for (let t = Math.ceil(min / step) * step; t <= max + step * 1e-9; t += step) {
    out.push(Number(t.toPrecision(12)));
  }
  return out;
}

function markerPath(marker: SeriesStyle["marker"], x: number, y: number,
                    color: string): string {
  const r = 4;
  switch (marker) {
    case "circle":
      return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${color}"/>`;
    case "square":
      return `<rect x="${fmt(x - r)}" y="${fmt(y - r)}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`;
    case "diamond":
      return `<path d="M ${fmt(x)} ${fmt(y - r - 1)} L ${fmt(x + r + 1)} ${fmt(y)} L ${fmt(x)} ${fmt(y + r + 1)} L ${fmt(x - r - 1)} ${fmt(y)} Z" fill="${color}"/>`;
    case "triangle":
      return `<path d="M ${fmt(x)} ${fmt(y - r - 1)} L ${fmt(x + r)} ${fmt(y + r)} L ${fmt(x - r)} ${fmt(y + r)} Z" fill="${color}"/>`;
    case "cross":
      return `<path d="M ${fmt(x - r)} ${fmt(y - r)} L ${fmt(x + r)} ${fmt(y + r)} M ${fmt(x - r)} ${fmt(y + r)} L ${fmt(x + r)} ${fmt(y - r)}" stroke="${color}" stroke-width="2" fill="none"/>`;
    case "plus":
      return `<path d="M ${fmt(x - r - 1)} ${fmt(y)} L ${fmt(x + r + 1)} ${fmt(y)} M ${fmt(x)} ${fmt(y - r - 1)} L ${fmt(x)} ${fmt(y + r + 1)}" stroke="${color}" stroke-width="2" fill="none"/>`;
  }
}

function buildSeries(rows: ResultRow[], spec: FigureSpec): Series[] {
  const settings = KIND_SETTINGS[spec.kind];
  const relevant = rows.filter((r) => r.sweepName === settings.sweepName);
  if (rows.length === 0) {
    throw new CsvFormatError("no data rows");
  }
  if (relevant.length === 0) {
    throw new CsvFormatError(
      `no data rows with sweep_name "${settings.sweepName}" for kind "${spec.kind}"`,
    );
  }
  const schemes: string[] = [];
  for (const row of relevant) {
    if (!schemes.includes(row.scheme)) schemes.push(row.scheme);
  }
  return schemes.map((scheme, i) => {
    const overrides = spec.styles?.[scheme] ?? {};
    const style: SeriesStyle = {
      label: overrides.label ?? SCHEME_LABELS[scheme] ?? scheme,
      color: overrides.color ?? PALETTE[i % PALETTE.length],
      marker: overrides.marker ?? MARKERS[i % MARKERS.length],
    };
    const points = relevant
      .filter((r) => r.scheme === scheme)
      .map((r) => ({ x: r.sweepValue, y: r.meanRate }))
      .sort((a, b) => a.x - b.x);
    return { scheme, style, points };
  });
}

/** Render one figure kind from parsed rows into SVG text. */
export function renderFigure(rows: ResultRow[], spec: FigureSpec): string {
  const settings = KIND_SETTINGS[spec.kind];
  const series = buildSeries(rows, spec);

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...ys, 1e-12) * 1.05;
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) =>
    MARGIN.left + (xMax > xMin ? ((x - xMin) / (xMax - xMin)) * plotW : plotW / 2);
  const sy = (y: number) => MARGIN.top + plotH - (y / yMax) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${spec.title ?? settings.title}</text>`,
  );

  // gridlines and ticks
  for (const t of ticks(0, yMax, 6)) {
    const y = sy(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(y)}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">${Number(t.toPrecision(4))}</text>`,
    );
  }
  for (const t of ticks(xMin, xMax, 7)) {
    const x = sx(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top}" x2="${fmt(x)}" y2="${HEIGHT - MARGIN.bottom}" stroke="#eeeeee"/>`,
      `<text x="${fmt(x)}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle" font-size="11">${Number(t.toPrecision(6))}</text>`,
    );
  }

  // axes and labels
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${HEIGHT - MARGIN.bottom}" stroke="black"/>`,
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" stroke="black"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">${settings.xLabel}</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">Average rate (bps/Hz)</text>`,
  );

  // series
  for (const s of series) {
    const path = s.points
      .map((p, i) => `${i === 0 ? "M" : "L"} ${fmt(sx(p.x))} ${fmt(sy(p.y))}`)
      .join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${s.style.color}" stroke-width="1.8"/>`);
    for (const p of s.points) {
      parts.push(markerPath(s.style.marker, sx(p.x), sy(p.y), s.style.color));
    }
  }

  // legend
  const legendX = MARGIN.left + 12;
  let legendY = MARGIN.top + 10;
  const legendW = 250;
  const legendH = series.length * 18 + 10;
  parts.push(
    `<rect x="${legendX - 6}" y="${legendY - 8}" width="${legendW}" height="${legendH}" fill="white" fill-opacity="0.85" stroke="#999999"/>`,
  );
  for (const s of series) {
    parts.push(
      `<line x1="${legendX}" y1="${legendY + 4}" x2="${legendX + 22}" y2="${legendY + 4}" stroke="${s.style.color}" stroke-width="1.8"/>`,
      markerPath(s.style.marker, legendX + 11, legendY + 4, s.style.color),
      `<text x="${legendX + 30}" y="${legendY + 8}" font-size="11">${s.style.label}</text>`,
    );
    legendY += 18;
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
