// ── CSV loading with loud, named diagnostics ──────────────────────────────────

import * as fs from "node:fs";
import * as path from "node:path";
import Papa from "papaparse";
import { z } from "zod";

/** Input problem (missing file/column, malformed cell).  `diagnostics` holds
 *  one human-readable line per concrete problem for CLI error output. */
export class InputError extends Error {
  readonly diagnostics: string[];

  constructor(message: string, diagnostics?: string[]) {
    super(message);
    this.name = "InputError";
    this.diagnostics = diagnostics ?? [message];
  }
}

/**
 * Load a CSV file and validate every row against `schema`.
 *
 * Column names are checked against the schema's keys before any cell is
 * parsed, so a missing column fails with its name rather than with a
 * confusing per-cell error.  Extra columns are ignored.
 */
export function loadCsv<S extends z.ZodRawShape>(
  filePath: string,
  schema: z.ZodObject<S>,
): z.infer<z.ZodObject<S>>[] {
  const name = path.basename(filePath);
  if (!fs.existsSync(filePath)) {
    throw new InputError(`missing input file: ${filePath}`);
  }
  const text = fs.readFileSync(filePath, "utf8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const lines = parsed.errors
      .slice(0, 5)
      .map((e) => `${name}: ${e.message}${e.row === undefined ? "" : ` (row ${e.row + 2})`}`);
    throw new InputError(`${name}: malformed CSV`, lines);
  }

  const expected = Object.keys(schema.shape);
  const actual = parsed.meta.fields ?? [];
  const missing = expected.filter((c) => !actual.includes(c));
  if (missing.length > 0) {
    throw new InputError(
      `${name}: missing column(s): ${missing.join(", ")} (found: ${actual.join(", ") || "none"})`,
    );
  }

  return parsed.data.map((row, i) => {
    const result = schema.safeParse(row);
    if (!result.success) {
      const issue = result.error.issues[0];
      const where = issue?.path.join(".") ?? "?";
      throw new InputError(`${name} row ${i + 2}, column ${where}: ${issue?.message ?? "invalid"}`);
    }
    return result.data;
  });
}

/** List file names in `dir` matching `pattern` (sorted).  Errors if the
 *  directory itself is absent. */
export function listInputs(dir: string, pattern: RegExp): string[] {
  if (!fs.existsSync(dir) || !fs.statSync(dir).isDirectory()) {
    throw new InputError(`input directory not found: ${dir}`);
  }
  return fs
    .readdirSync(dir)
    .filter((f) => pattern.test(f))
    .sort();
}
