/**
 * Minimal deterministic SVG chart primitives. Everything is a pure
 * function of its arguments so re-rendering the same inputs yields
 * byte-identical output (the determinism contract of the plot CLI).
 */

export interface Scale {
  (value: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

/** Fixed-precision coordinate formatting keeps the output byte-stable. */
export function fmt(value: number): string {
  const rounded = value.toFixed(2);
  return rounded === "-0.00" ? "0.00" : rounded;
}

export function fmtTick(value: number): string {
  if (Number.isInteger(value)) return String(value);
  const s = value.toPrecision(4);
  return String(Number(s));
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Round-ish tick positions covering [lo, hi]. */
export function ticks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(1, count - 1);
  const magnitude = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * magnitude);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[candidates.length - 1];
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export interface SeriesStyle {
  color: string;
  dash?: string;
  width?: number;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
  "#bcbd22",
  "#e377c2",
];

export function polyline(
  xs: number[],
  ys: number[],
  xScale: Scale,
  yScale: Scale,
  style: SeriesStyle
): string {
  const points = xs
    .map((x, i) => `${fmt(xScale(x))},${fmt(yScale(ys[i]))}`)
    .join(" ");
  const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
  return (
    `<polyline fill="none" stroke="${style.color}" ` +
    `stroke-width="${style.width ?? 1.5}"${dash} points="${points}"/>`
  );
}

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_FRAME: Frame = {
  width: 640,
  height: 420,
  margin: { top: 40, right: 24, bottom: 48, left: 60 },
};

export function axes(
  frame: Frame,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  xTicks: number[],
  yTicks: number[],
  xTickLabel: (v: number) => string = fmtTick
): string {
  const { margin, width, height } = frame;
  const x0 = margin.left;
  const x1 = width - margin.right;
  const y0 = height - margin.bottom;
  const y1 = margin.top;
  const parts: string[] = [];
  for (const t of yTicks) {
    const y = fmt(yScale(t));
    parts.push(
      `<line x1="${x0}" y1="${y}" x2="${x1}" y2="${y}" stroke="#ddd"/>`,
      `<text x="${x0 - 8}" y="${y}" dy="0.32em" text-anchor="end" font-size="11">${fmtTick(t)}</text>`
    );
  }
  for (const t of xTicks) {
    const x = fmt(xScale(t));
    parts.push(
      `<line x1="${x}" y1="${y0}" x2="${x}" y2="${y0 + 5}" stroke="#444"/>`,
      `<text x="${x}" y="${y0 + 18}" text-anchor="middle" font-size="11">${escapeXml(xTickLabel(t))}</text>`
    );
  }
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#444"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#444"/>`,
    `<text x="${fmt((x0 + x1) / 2)}" y="${height - 10}" text-anchor="middle" font-size="12">${escapeXml(xLabel)}</text>`,
    `<text x="16" y="${fmt((y0 + y1) / 2)}" text-anchor="middle" font-size="12" transform="rotate(-90 16 ${fmt((y0 + y1) / 2)})">${escapeXml(yLabel)}</text>`
  );
  return parts.join("\n");
}

export interface LegendEntry {
  label: string;
  style: SeriesStyle;
}

export function legend(frame: Frame, entries: LegendEntry[]): string {
  const x = frame.margin.left + 10;
  const parts: string[] = [`<g class="legend">`];
  entries.forEach((entry, i) => {
    const y = frame.margin.top + 8 + i * 16;
    const dash = entry.style.dash ? ` stroke-dasharray="${entry.style.dash}"` : "";
    parts.push(
      `<g class="legend-item">` +
        `<line x1="${x}" y1="${y}" x2="${x + 22}" y2="${y}" stroke="${entry.style.color}" stroke-width="${entry.style.width ?? 1.5}"${dash}/>` +
        `<text x="${x + 28}" y="${y}" dy="0.32em" font-size="11">${escapeXml(entry.label)}</text>` +
        `</g>`
    );
  });
  parts.push("</g>");
  return parts.join("\n");
}

export function document(frame: Frame, title: string, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" ` +
    `viewBox="0 0 ${frame.width} ${frame.height}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${frame.width}" height="${frame.height}" fill="white"/>\n` +
    `<text x="${fmt(frame.width / 2)}" y="22" text-anchor="middle" font-size="14">${escapeXml(title)}</text>\n` +
    body +
    "\n</svg>\n"
  );
}
