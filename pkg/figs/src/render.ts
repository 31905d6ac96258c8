// ── figure rendering entry point ──────────────────────────────────────────────

import * as fs from "node:fs";
import * as path from "node:path";
import { InputError } from "./csv.js";
import { FIGURE_IDS, RECIPES } from "./recipes.js";

/**
 * Render one figure from the CSVs in `inputDir` and write the SVG to
 * `outputPath`.  Inputs are only ever read.  Returns the written path.
 */
export function renderFigure(figureId: string, inputDir: string, outputPath: string): string {
  const recipe = RECIPES[figureId];
  if (!recipe) {
    throw new InputError(`unknown figure id: ${figureId} (known: ${FIGURE_IDS.join(", ")})`);
  }
  const svg = recipe.build(inputDir);
  fs.mkdirSync(path.dirname(outputPath), { recursive: true });
  fs.writeFileSync(outputPath, svg, "utf8");
  return outputPath;
}
