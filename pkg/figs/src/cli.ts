// ── command line interface ────────────────────────────────────────────────────
//
//   wgmsim-figs <figure-id|all> <input-dir> <out-dir>
//
// Renders one figure (or every known figure) from simulator CSVs into
// <out-dir>/<figure-id>.svg.  Exit codes: 0 success, 1 input problems
// (missing files/columns, bad cells), 2 usage errors.

import * as path from "node:path";
import { pathToFileURL } from "node:url";
import { InputError } from "./csv.js";
import { FIGURE_IDS } from "./recipes.js";
import { renderFigure } from "./render.js";

function usage(): string {
  return [
    "usage: wgmsim-figs <figure-id|all> <input-dir> <out-dir>",
    `figure ids: ${FIGURE_IDS.join(", ")}`,
  ].join("\n");
}

export function main(argv: string[]): number {
  if (argv.length !== 3) {
    console.error(usage());
    return 2;
  }
  const [figureArg, inputDir, outDir] = argv as [string, string, string];
  const ids = figureArg === "all" ? FIGURE_IDS : [figureArg];
  if (!ids.every((id) => FIGURE_IDS.includes(id))) {
    console.error(`unknown figure id: ${figureArg}`);
    console.error(usage());
    return 2;
  }

  const failures: string[] = [];
  for (const id of ids) {
    try {
      const out = renderFigure(id, inputDir, path.join(outDir, `${id}.svg`));
      console.log(`wrote ${out}`);
    } catch (err) {
      if (err instanceof InputError) {
        failures.push(...err.diagnostics.map((d) => `${id}: ${d}`));
      } else {
        throw err;
      }
    }
  }
  if (failures.length > 0) {
    for (const line of failures) {
      console.error(line);
    }
    console.error(`${failures.length} figure(s) failed`);
    return 1;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
