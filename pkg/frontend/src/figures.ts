/**
 * The three figure families rendered from harness CSV tables:
 *
 *   bits   - SNR vs. phase resolution b, per surface size N, with the
 *            continuous-phase result as a horizontal reference
 *   power  - SNR vs. transmit power in dBm, one line per (N, b)
 *            configuration plus the conventional-array baselines
 *   nf_ff  - upper-bound SNR vs. antenna-surface distance d_T with the
 *            Rayleigh distance marked per N
 *
 * Rows with the same configuration but different seeds are averaged.
 */

import { groupMean, Placement, ResultRow } from "./data.js";
import {
  DEFAULT_FRAME,
  Frame,
  LegendEntry,
  PALETTE,
  Scale,
  axes,
  document,
  fmt,
  fmtTick,
  legend,
  linearScale,
  polyline,
  ticks,
} from "./svg.js";

export type FigureKind = "bits" | "power" | "nf_ff";

export interface FigureSpec {
  kind: FigureKind;
  rows: ResultRow[];
  /** nf_ff only: placements block from the scenario meta file */
  placements?: Placement[];
  title?: string;
}

function distinct<T>(values: T[]): T[] {
  return [...new Set(values)];
}

function sortedNumbers(values: number[]): number[] {
  return distinct(values).sort((a, b) => a - b);
}

function frameScales(
  frame: Frame,
  xDomain: [number, number],
  yDomain: [number, number]
): { x: Scale; y: Scale } {
  const { margin, width, height } = frame;
  return {
    x: linearScale(xDomain, [margin.left, width - margin.right]),
    y: linearScale(yDomain, [height - margin.bottom, margin.top]),
  };
}

function padded(values: number[], fraction = 0.08): [number, number] {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const pad = (hi - lo || 1) * fraction;
  return [lo - pad, hi + pad];
}

export function renderBitsFigure(rows: ResultRow[], title: string): string {
  const frame = DEFAULT_FRAME;
  const quantized = rows.filter((r) => r.b !== "cont");
  const continuous = rows.filter((r) => r.b === "cont");
  const sizes = sortedNumbers(rows.map((r) => r.N));
  const bits = sortedNumbers(quantized.map((r) => Number(r.b)));
  const optimized = groupMean(quantized, (r) => `${r.N}|${r.b}`, (r) => r.snr_db_proposed_ma);
  const fixed = groupMean(quantized, (r) => `${r.N}|${r.b}`, (r) => r.snr_db_fixed);
  const contRef = groupMean(continuous, (r) => `${r.N}`, (r) => r.snr_db_proposed_ma);

  const allY = [...optimized.values(), ...fixed.values(), ...contRef.values()];
  const { x, y } = frameScales(frame, [bits[0] - 0.25, bits[bits.length - 1] + 0.25], padded(allY));

  const body: string[] = [];
  const entries: LegendEntry[] = [];
  sizes.forEach((n, i) => {
    const color = PALETTE[i % PALETTE.length];
    const opt = bits.map((b) => optimized.get(`${n}|${b}`) ?? NaN);
    const fix = bits.map((b) => fixed.get(`${n}|${b}`) ?? NaN);
    body.push(polyline(bits, opt, x, y, { color }));
    body.push(polyline(bits, fix, x, y, { color, dash: "5,3", width: 1 }));
    entries.push({ label: `optimized MA, N=${n}`, style: { color } });
    entries.push({ label: `fixed, N=${n}`, style: { color, dash: "5,3", width: 1 } });
    const ref = contRef.get(`${n}`);
    if (ref !== undefined) {
      const yRef = fmt(y(ref));
      body.push(
        `<line x1="${fmt(x(x.domain[0]))}" y1="${yRef}" x2="${fmt(x(x.domain[1]))}" y2="${yRef}" ` +
          `stroke="${color}" stroke-width="1" stroke-dasharray="2,3"/>`
      );
      entries.push({ label: `cont., N=${n}`, style: { color, dash: "2,3", width: 1 } });
    }
  });
  body.push(axes(frame, x, y, "quantization bits b", "SNR (dB)", bits, ticks(y.domain[0], y.domain[1])));
  body.push(legend(frame, entries));
  return document(frame, title, body.join("\n"));
}

export function renderPowerFigure(rows: ResultRow[], title: string): string {
  const frame = DEFAULT_FRAME;
  const powers = sortedNumbers(rows.map((r) => r.P_dBm));
  const configs = distinct(rows.map((r) => `${r.N}|${r.b}`)).sort();
  const proposed = groupMean<string>(rows, (r) => `${r.N}|${r.b}|${r.P_dBm}`, (r) => r.snr_db_proposed_ma);
  const m1 = groupMean(rows, (r) => `${r.P_dBm}`, (r) => r.snr_db_baseline_M1);
  const m10 = groupMean(rows, (r) => `${r.P_dBm}`, (r) => r.snr_db_baseline_M10);

  const allY = [...proposed.values(), ...m1.values(), ...m10.values()];
  const { x, y } = frameScales(frame, padded(powers, 0.03), padded(allY));

  const body: string[] = [];
  const entries: LegendEntry[] = [];
  configs.forEach((key, i) => {
    const [n, b] = key.split("|");
    const color = PALETTE[i % PALETTE.length];
    const values = powers.map((p) => proposed.get(`${n}|${b}|${p}`) ?? NaN);
    body.push(polyline(powers, values, x, y, { color }));
    const label = b === "cont" ? `N=${n}, cont.` : `N=${n}, b=${b}`;
    entries.push({ label, style: { color } });
  });
  const baselines: Array<[string, Map<string, number>, string]> = [
    ["conventional M=1", m1, "5,3"],
    ["conventional M=10", m10, "8,3"],
  ];
  for (const [label, series, dash] of baselines) {
    const values = powers.map((p) => series.get(`${p}`) ?? NaN);
    body.push(polyline(powers, values, x, y, { color: "#555", dash, width: 1 }));
    entries.push({ label, style: { color: "#555", dash, width: 1 } });
  }
  body.push(
    axes(frame, x, y, "transmit power P (dBm)", "SNR (dB)", powers, ticks(y.domain[0], y.domain[1]))
  );
  body.push(legend(frame, entries));
  return document(frame, title, body.join("\n"));
}

export function renderNfFfFigure(
  rows: ResultRow[],
  placements: Placement[],
  title: string
): string {
  const frame = DEFAULT_FRAME;
  const distances = sortedNumbers(rows.map((r) => r.d_T));
  const configs = distinct(rows.map((r) => `${r.N}|${r.b}`)).sort();
  const bound = groupMean<string>(rows, (r) => `${r.N}|${r.b}|${r.d_T}`, (r) => r.snr_db_upper_bound);

  const { x, y } = frameScales(frame, padded(distances, 0.03), padded([...bound.values()]));

  const body: string[] = [];
  const entries: LegendEntry[] = [];
  configs.forEach((key, i) => {
    const [n, b] = key.split("|");
    const color = PALETTE[i % PALETTE.length];
    const values = distances.map((d) => bound.get(`${n}|${b}|${d}`) ?? NaN);
    body.push(polyline(distances, values, x, y, { color }));
    entries.push({ label: `upper bound, N=${n}, b=${b}`, style: { color } });

    const rayleigh = placements.find((p) => p.N === Number(n))?.rayleigh_distance_m;
    if (rayleigh !== undefined && rayleigh >= x.domain[0] && rayleigh <= x.domain[1]) {
      const xr = fmt(x(rayleigh));
      const yTop = frame.margin.top + 4;
      body.push(
        `<line x1="${xr}" y1="${yTop}" x2="${xr}" y2="${fmt(y(y.domain[0]))}" ` +
          `stroke="${color}" stroke-width="1" stroke-dasharray="3,3"/>`,
        `<text x="${xr}" y="${yTop + 10}" dx="4" font-size="10" fill="${color}">` +
          `Rayleigh ${fmtTick(Number(rayleigh.toPrecision(3)))} m (N=${n})</text>`
      );
    }
  });
  body.push(
    axes(frame, x, y, "antenna-surface distance d_T (m)", "SNR upper bound (dB)", distances, ticks(y.domain[0], y.domain[1]))
  );
  body.push(legend(frame, entries));
  return document(frame, title, body.join("\n"));
}

const EXPECTED_SCENARIO: Record<FigureKind, string> = {
  bits: "snr_vs_bits",
  power: "snr_vs_power",
  nf_ff: "nf_ff_sweep",
};

export function render(spec: FigureSpec): string {
  const scenarios = distinct(spec.rows.map((r) => r.scenario));
  if (scenarios.length !== 1 || scenarios[0] !== EXPECTED_SCENARIO[spec.kind]) {
    throw new Error(
      `figure kind '${spec.kind}' expects scenario '${EXPECTED_SCENARIO[spec.kind]}', ` +
        `csv has [${scenarios.join(", ")}]`
    );
  }
  switch (spec.kind) {
    case "bits":
      return renderBitsFigure(spec.rows, spec.title ?? "SNR vs. quantization bits");
    case "power":
      return renderPowerFigure(spec.rows, spec.title ?? "SNR vs. transmit power");
    case "nf_ff":
      return renderNfFfFigure(
        spec.rows,
        spec.placements ?? [],
        spec.title ?? "SNR vs. antenna-surface distance"
      );
  }
}

/** Number of legend entries a kind produces for a given table. */
export function expectedLegendCount(kind: FigureKind, rows: ResultRow[]): number {
  if (kind === "bits") {
    const sizes = distinct(rows.map((r) => r.N));
    const hasCont = rows.some((r) => r.b === "cont");
    return sizes.length * (hasCont ? 3 : 2);
  }
  const configs = distinct(rows.map((r) => `${r.N}|${r.b}`));
  return kind === "power" ? configs.length + 2 : configs.length;
}
