import * as path from "node:path";
import { describe, expect, it } from "vitest";
import { InputError, loadCsv } from "../src/csv.js";
import { dynamicRangeRowSchema, photonSweepRowSchema, spectrumRowSchema } from "../src/schemas.js";
import { makeTempDir, writeCsv } from "./helpers.js";

describe("loadCsv", () => {
  it("parses well-formed rows into numbers", () => {
    const dir = makeTempDir("csv");
    const p = writeCsv(dir, "s.csv", ["detuning_gamma", "value"], [
      [-1.5, 0.25],
      [0, 0.02],
      [1.5, "2.5e-1"],
    ]);
    const rows = loadCsv(p, spectrumRowSchema);
    expect(rows).toEqual([
      { detuning_gamma: -1.5, value: 0.25 },
      { detuning_gamma: 0, value: 0.02 },
      { detuning_gamma: 1.5, value: 0.25 },
    ]);
  });

  it("reports a missing file by path", () => {
    const dir = makeTempDir("csv");
    const p = path.join(dir, "absent.csv");
    expect(() => loadCsv(p, spectrumRowSchema)).toThrowError(/missing input file.*absent\.csv/);
  });

  it("reports missing columns by name before any cell parsing", () => {
    const dir = makeTempDir("csv");
    const p = writeCsv(dir, "bad.csv", ["detuning_gamma", "intensity"], [[0, 1]]);
    try {
      loadCsv(p, spectrumRowSchema);
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(InputError);
      expect((err as Error).message).toContain("missing column(s): value");
      expect((err as Error).message).toContain("intensity");
    }
  });

  it("ignores extra columns", () => {
    const dir = makeTempDir("csv");
    const p = writeCsv(dir, "extra.csv", ["detuning_gamma", "value", "comment"], [[0, 0.5, "hi"]]);
    expect(loadCsv(p, spectrumRowSchema)).toEqual([{ detuning_gamma: 0, value: 0.5 }]);
  });

  it("reports a malformed cell with its row and column", () => {
    const dir = makeTempDir("csv");
    const p = writeCsv(dir, "cell.csv", ["detuning_gamma", "value"], [
      [0, 0.5],
      ["oops", 0.5],
    ]);
    expect(() => loadCsv(p, spectrumRowSchema)).toThrowError(/row 3, column detuning_gamma/);
  });

  it("rejects blank numeric cells instead of coercing them to zero", () => {
    const dir = makeTempDir("csv");
    const p = writeCsv(dir, "blank.csv", ["detuning_gamma", "value"], [["", 0.5]]);
    expect(() => loadCsv(p, spectrumRowSchema)).toThrowError(/finite number/);
  });

  it("accepts nan only where the schema allows it", () => {
    const dir = makeTempDir("csv");
    const header = ["r", "dynamic_range_gamma", "noise_3sigma_gamma", "max_fraction_satisfied"];
    const ok = writeCsv(dir, "dyn.csv", header, [[0.999, 2, 0.5, "nan"]]);
    const rows = loadCsv(ok, dynamicRangeRowSchema);
    expect(rows[0]!.max_fraction_satisfied).toBeNaN();
    const bad = writeCsv(dir, "dyn_bad.csv", header, [[0.999, "nan", 0.5, 0.2]]);
    expect(() => loadCsv(bad, dynamicRangeRowSchema)).toThrowError(/column dynamic_range_gamma/);
  });

  it("rejects unknown measurement case labels", () => {
    const dir = makeTempDir("csv");
    const p = writeCsv(dir, "sweep.csv", ["case", "N", "delta_omega_3sigma_fm"], [["mystery_case", 100, 3]]);
    expect(() => loadCsv(p, photonSweepRowSchema)).toThrowError(/column case/);
  });
});
