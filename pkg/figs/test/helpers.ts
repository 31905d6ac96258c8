// Synthetic CSV fixtures shaped like the simulator's outputs.

import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export function makeTempDir(prefix: string): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), `${prefix}-`));
}

export function writeCsv(dir: string, name: string, header: string[], rows: Array<Array<string | number>>): string {
  const text = [header.join(","), ...rows.map((r) => r.join(","))].join("\n") + "\n";
  const p = path.join(dir, name);
  fs.writeFileSync(p, text, "utf8");
  return p;
}

const GRID: number[] = Array.from({ length: 121 }, (_, i) => -3 + i * 0.05);

function spectrumRows(dip: (d: number) => number): Array<Array<string | number>> {
  return GRID.map((d) => [d.toPrecision(9), dip(d).toPrecision(9)]);
}

export function writeSpectrum(dir: string, kind: string, r: number, alpha: number, width: number, dip: (d: number) => number): string {
  const name = `spectrum_${kind}_r${r}_a${alpha}_w${width}.csv`;
  return writeCsv(dir, name, ["detuning_gamma", "value"], spectrumRows(dip));
}

export const DIPS = {
  classical_wgm: (d: number) => 1 - 0.9 * Math.exp(-(d * d) / 0.36),
  classical_wgm_mzi: (d: number) => 0.5 - 0.8 * Math.exp(-(d * d) / 0.4),
  entangled_wgm_mzi: (d: number) => 1 - 0.95 * Math.exp(-(d * d) / 0.2),
};

/** Populate `dir` with a complete, mutually consistent set of inputs for
 *  every figure. */
export function writeAllInputs(dir: string): void {
  // Width-0 spectra: all three cases at (r=0.999, a=0.9997), plus extra
  // entangled couplings (one critical) and one broadened file that spectrum
  // recipes must ignore.
  for (const [kind, dip] of Object.entries(DIPS)) {
    writeSpectrum(dir, kind, 0.999, 0.9997, 0, dip);
  }
  writeSpectrum(dir, "entangled_wgm_mzi", 0.9994, 0.9997, 0, (d) => 1 - 0.8 * Math.exp(-(d * d) / 0.3));
  writeSpectrum(dir, "entangled_wgm_mzi", 0.9997, 0.9997, 0, (d) => 1 - 0.99 * Math.exp(-(d * d) / 0.25));
  writeSpectrum(dir, "entangled_wgm_mzi", 0.999, 0.9997, 0.5, (d) => 1 - 0.5 * Math.exp(-(d * d) / 0.8));

  const sweepRows: Array<Array<string | number>> = [];
  const scale: Record<string, number> = {
    classical_wgm: 30,
    classical_wgm_mzi: 31,
    entangled_wgm_mzi: 13,
    classical_wgm_mzi_single: 33,
  };
  for (const n of [100, 1000, 10000]) {
    for (const [kind, c] of Object.entries(scale)) {
      sweepRows.push([kind, n, (c / Math.sqrt(n)).toPrecision(9)]);
    }
  }
  writeCsv(dir, "photon_sweep.csv", ["case", "N", "delta_omega_3sigma_fm"], sweepRows);

  const mapRows: Array<Array<string | number>> = [];
  for (const alpha of [0.9994, 0.9996]) {
    for (const r of [0.9992, 0.9994, 0.9996]) {
      const flagged = r === alpha ? 1 : 0;
      mapRows.push([r, alpha, (2 + 5000 * (r - 0.9992)).toPrecision(9), (1 + 2500 * (r - 0.9992)).toPrecision(9), flagged]);
    }
  }
  writeCsv(dir, "coupling_map.csv", ["r", "alpha", "snr_vs_classical_wgm", "snr_vs_classical_mzi", "dr_violation_flag"], mapRows);

  writeLinewidth(dir, [0.1, 0.2, 0.3, 0.5, 1.0]);

  writeCsv(
    dir,
    "dynamic_range.csv",
    ["r", "dynamic_range_gamma", "noise_3sigma_gamma", "max_fraction_satisfied"],
    [
      [0.999, 3, 0.5, 0.2],
      [0.9992, 2, 0.7, 0.4],
      [0.9994, 1.5, 0.8, 0.6],
      [0.9996, 0.5, 0.9, "nan"],
      [0.9998, 0.1, 1.0, "nan"],
    ],
  );
}

export function writeLinewidth(dir: string, ratios: number[]): void {
  const rows: Array<Array<string | number>> = [];
  for (const w of ratios) {
    for (const r of [0.999, 0.9993, 0.9996]) {
      rows.push([w, r, (1 + (0.3 / w) * Math.exp(-(((r - 0.9994) / 0.0004) ** 2))).toPrecision(9)]);
    }
  }
  writeCsv(dir, "linewidth_sweep.csv", ["width_ratio", "r", "snr_vs_classical_mzi"], rows);
}

export function attr(svg: string, name: string): string | undefined {
  const m = new RegExp(`${name}="([^"]*)"`).exec(svg);
  return m?.[1];
}

export function count(svg: string, needle: string | RegExp): number {
  const re = typeof needle === "string" ? new RegExp(needle.replace(/[.*+?^${}()|[\]\\]/g, "\\$&"), "g") : new RegExp(needle.source, "g");
  return [...svg.matchAll(re)].length;
}
