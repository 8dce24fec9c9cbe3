#!/usr/bin/env node
/**
 * plot --csv <path> --kind <bits|power|nf_ff> --out <img.svg>
 *
 * Renders one figure from a harness results CSV. For nf_ff the sibling
 * <scenario>.meta.json supplies the Rayleigh-distance markers; pass
 * --meta to point elsewhere. Output is SVG only: deterministic vector
 * output is what makes re-renders byte-identical.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { EmptyTableError, SchemaError, parseMeta, parseResultsCsv } from "./data.js";
import { FigureKind, render } from "./figures.js";

const KINDS: FigureKind[] = ["bits", "power", "nf_ff"];

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        csv: { type: "string" },
        kind: { type: "string" },
        out: { type: "string" },
        meta: { type: "string" },
        title: { type: "string" },
      },
    }).values;
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const { csv, kind, out } = args;
  if (!csv || !kind || !out) {
    console.error("usage: plot --csv <path> --kind <bits|power|nf_ff> --out <img.svg>");
    return 2;
  }
  if (!KINDS.includes(kind as FigureKind)) {
    console.error(`unknown kind '${kind}' (expected one of ${KINDS.join(", ")})`);
    return 2;
  }
  if (!out.endsWith(".svg")) {
    console.error(`unsupported output format '${out}': only .svg is supported`);
    return 2;
  }
  try {
    const rows = parseResultsCsv(readFileSync(csv, "utf-8"));
    let placements;
    if (kind === "nf_ff") {
      const metaPath = args.meta ?? csv.replace(/\.csv$/, ".meta.json");
      placements = parseMeta(readFileSync(metaPath, "utf-8")).placements;
    }
    const svg = render({
      kind: kind as FigureKind,
      rows,
      placements,
      title: args.title,
    });
    writeFileSync(out, svg);
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError || err instanceof EmptyTableError) {
      console.error(`input error: ${err.message}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
