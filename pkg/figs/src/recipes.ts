// ── figure recipes ────────────────────────────────────────────────────────────
//
// One recipe per figure id.  A recipe declares which CSV inputs it needs and
// how to turn them into an SVG; anything missing or malformed raises
// InputError with a concrete diagnostic (file, column, or what to re-run).

import * as path from "node:path";
import { InputError, listInputs, loadCsv } from "./csv.js";
import {
  couplingMapRowSchema,
  dynamicRangeRowSchema,
  linewidthRowSchema,
  MeasurementCase,
  photonSweepRowSchema,
  spectrumRowSchema,
} from "./schemas.js";
import { Band, PlotSeries, renderHeatmap, renderLineChart, ScaleKind } from "./svg.js";

export interface FigureRecipe {
  id: string;
  title: string;
  /** Required input files or file patterns, for documentation and errors. */
  inputs: string[];
  xLabel: string;
  yLabel: string;
  xScale: ScaleKind;
  yScale: ScaleKind;
  /** Exact number of plotted series, or null when it follows from the data. */
  expectedSeries: number | null;
  build: (inputDir: string) => string;
}

const CASE_LABELS: Record<MeasurementCase, string> = {
  classical_wgm: "classical single waveguide",
  classical_wgm_mzi: "classical MZI difference",
  entangled_wgm_mzi: "entangled coincidence",
  classical_wgm_mzi_single: "classical MZI single output",
};

const EXCLUSION_FRACTIONS = [0.2, 0.4, 0.6, 0.8];

// ── spectrum file discovery ───────────────────────────────────────────────────

const SPECTRUM_RE =
  /^spectrum_(classical_wgm_mzi_single|classical_wgm_mzi|classical_wgm|entangled_wgm_mzi)_r([^_]+)_a([^_]+)_w([^_]+)\.csv$/;

interface SpectrumFile {
  file: string;
  kind: MeasurementCase;
  r: number;
  alpha: number;
  width: number;
}

function findSpectra(dir: string): SpectrumFile[] {
  return listInputs(dir, SPECTRUM_RE).map((file) => {
    const m = SPECTRUM_RE.exec(file)!;
    return {
      file,
      kind: m[1] as MeasurementCase,
      r: Number(m[2]),
      alpha: Number(m[3]),
      width: Number(m[4]),
    };
  });
}

function spectrumSeries(dir: string, f: SpectrumFile, name: string, dashed = false): PlotSeries {
  const rows = loadCsv(path.join(dir, f.file), spectrumRowSchema);
  return { name, dashed, points: rows.map((row): [number, number] => [row.detuning_gamma, row.value]) };
}

function isCritical(f: SpectrumFile): boolean {
  return Math.abs(f.r - f.alpha) <= 1e-12;
}

// ── fig2: coincidence spectra for several couplings ──────────────────────────

function buildFig2(dir: string): string {
  const files = findSpectra(dir)
    .filter((f) => f.kind === "entangled_wgm_mzi" && f.width === 0)
    .sort((a, b) => a.r - b.r);
  if (files.length < 2) {
    throw new InputError(
      `fig2 needs two or more files matching spectrum_entangled_wgm_mzi_r*_a*_w0.csv in ${dir} (found ${files.length}); run the spectrum command for several r values`,
    );
  }
  const series = files.map((f) =>
    spectrumSeries(dir, f, `r=${f.r}${isCritical(f) ? " (critical)" : ""}`, isCritical(f)),
  );
  return renderLineChart({
    figureId: "fig2",
    title: "Coincidence spectra vs coupling",
    xLabel: "detuning (units of linewidth)",
    yLabel: "coincidence probability",
    xScale: "linear",
    yScale: "linear",
    series,
  });
}

// ── fig3: the three measurement cases at one coupling ─────────────────────────

const FIG3_CASES: MeasurementCase[] = ["classical_wgm", "classical_wgm_mzi", "entangled_wgm_mzi"];

function buildFig3(dir: string): string {
  const spectra = findSpectra(dir).filter((f) => f.width === 0);
  const byKey = new Map<string, Map<MeasurementCase, SpectrumFile>>();
  for (const f of spectra) {
    const key = `${f.r}|${f.alpha}`;
    if (!byKey.has(key)) byKey.set(key, new Map());
    byKey.get(key)!.set(f.kind, f);
  }
  const complete = [...byKey.values()].filter((m) => FIG3_CASES.every((c) => m.has(c)));
  if (complete.length === 0) {
    throw new InputError(
      `fig3 needs width-0 spectrum files for all of [${FIG3_CASES.join(", ")}] at one common (r, alpha); ` +
        `found ${spectra.length} spectrum file(s) in ${dir}, none forming a complete set (run the spectrum command with the all-cases option)`,
    );
  }
  // Prefer the undercoupled working point used throughout; else the lowest r.
  const preferred = complete.find((m) => {
    const f = m.get("entangled_wgm_mzi")!;
    return Math.abs(f.r - 0.999) <= 1e-12 && Math.abs(f.alpha - 0.9997) <= 1e-12;
  });
  const chosen = preferred ?? complete.sort((a, b) => a.get(FIG3_CASES[0]!)!.r - b.get(FIG3_CASES[0]!)!.r)[0]!;

  const series = FIG3_CASES.map((c) => spectrumSeries(dir, chosen.get(c)!, CASE_LABELS[c]));
  const ent = series[series.length - 1]!;
  series.push({
    name: "entangled, resonance shifted 0.1",
    dashed: true,
    points: ent.points.map(([d, v]): [number, number] => [d + 0.1, v]),
  });

  // Steepest point of the coincidence spectrum marks the operating point.
  const pts = ent.points;
  let iBest = 1;
  let gBest = -Infinity;
  for (let i = 1; i < pts.length - 1; i++) {
    const g = Math.abs((pts[i + 1]![1] - pts[i - 1]![1]) / (pts[i + 1]![0] - pts[i - 1]![0]));
    if (g > gBest) {
      gBest = g;
      iBest = i;
    }
  }

  return renderLineChart({
    figureId: "fig3",
    title: "Output spectra of the three measurement cases",
    xLabel: "detuning (units of linewidth)",
    yLabel: "normalised signal",
    xScale: "linear",
    yScale: "linear",
    series,
    markers: [{ x: pts[iBest]![0], y: pts[iBest]![1], label: "max gradient" }],
  });
}

// ── fig4a / figS1: shift noise vs photon budget ───────────────────────────────

function sweepSeries(dir: string, cases: MeasurementCase[], figureId: string): PlotSeries[] {
  const rows = loadCsv(path.join(dir, "photon_sweep.csv"), photonSweepRowSchema);
  return cases.map((c) => {
    const pts = rows
      .filter((row) => row.case === c)
      .sort((a, b) => a.N - b.N)
      .map((row): [number, number] => [row.N, row.delta_omega_3sigma_fm]);
    if (pts.length === 0) {
      throw new InputError(
        `${figureId}: photon_sweep.csv has no rows for case ${c}; re-run the noise sweep including it`,
      );
    }
    return { name: CASE_LABELS[c], points: pts };
  });
}

function buildFig4a(dir: string): string {
  return renderLineChart({
    figureId: "fig4a",
    title: "Resonance-shift noise vs photon budget",
    xLabel: "photons per time bin",
    yLabel: "3-sigma shift noise (fm)",
    xScale: "log",
    yScale: "log",
    series: sweepSeries(dir, FIG3_CASES, "fig4a"),
  });
}

function buildFigS1(dir: string): string {
  return renderLineChart({
    figureId: "figS1",
    title: "Difference vs single-output interferometric readout",
    xLabel: "photons per time bin",
    yLabel: "3-sigma shift noise (fm)",
    xScale: "log",
    yScale: "log",
    series: sweepSeries(dir, ["classical_wgm_mzi", "classical_wgm_mzi_single"], "figS1"),
  });
}

// ── fig4b / fig4c: enhancement maps over (r, alpha) ──────────────────────────

function buildMap(dir: string, figureId: string, column: "snr_vs_classical_wgm" | "snr_vs_classical_mzi", title: string): string {
  const rows = loadCsv(path.join(dir, "coupling_map.csv"), couplingMapRowSchema);
  if (rows.length === 0) {
    throw new InputError(`${figureId}: coupling_map.csv contains no data rows`);
  }
  return renderHeatmap({
    figureId,
    title,
    xLabel: "coupling mirror reflectivity r",
    yLabel: "round-trip amplitude alpha",
    valueLabel: "enhancement",
    cells: rows.map((row) => ({
      x: row.r,
      y: row.alpha,
      value: row[column],
      flagged: row.dr_violation_flag === 1,
    })),
  });
}

function buildFig4b(dir: string): string {
  return buildMap(dir, "fig4b", "snr_vs_classical_wgm", "SNR enhancement vs single-waveguide readout");
}

function buildFig4c(dir: string): string {
  return buildMap(dir, "fig4c", "snr_vs_classical_mzi", "SNR enhancement vs classical interferometric readout");
}

// ── fig5: enhancement vs coupling for broadened sources ──────────────────────

function buildFig5(dir: string): string {
  const rows = loadCsv(path.join(dir, "linewidth_sweep.csv"), linewidthRowSchema);
  const ratios = [...new Set(rows.map((row) => row.width_ratio))].sort((a, b) => a - b);
  if (ratios.length !== 5) {
    throw new InputError(
      `fig5 expects exactly 5 source-linewidth curves, found ${ratios.length} distinct width_ratio value(s): [${ratios.join(", ")}]`,
    );
  }
  const series = ratios.map((w): PlotSeries => {
    const pts = rows
      .filter((row) => row.width_ratio === w)
      .sort((a, b) => a.r - b.r)
      .map((row): [number, number] => [row.r, row.snr_vs_classical_mzi]);
    return { name: `source width ${w} linewidths`, points: pts };
  });
  return renderLineChart({
    figureId: "fig5",
    title: "Enhancement vs coupling for broadened sources",
    xLabel: "coupling mirror reflectivity r",
    yLabel: "SNR enhancement vs classical MZI",
    xScale: "linear",
    yScale: "linear",
    series,
  });
}

// ── figS2: enhancement with dynamic-range exclusion regions ───────────────────

function exclusionBands(rows: { r: number; dynamic_range_gamma: number; noise_3sigma_gamma: number }[]): {
  bands: Band[];
  levels: number;
} {
  const sorted = [...rows].sort((a, b) => a.r - b.r);
  const bands: Band[] = [];
  let levels = 0;
  for (const f of EXCLUSION_FRACTIONS) {
    const excluded = sorted.map((row) => row.noise_3sigma_gamma > f * row.dynamic_range_gamma);
    if (!excluded.some(Boolean)) {
      throw new InputError(
        `figS2: no sampled coupling exceeds fraction ${f} of the dynamic range; extend the scan toward critical coupling`,
      );
    }
    levels++;
    let i = 0;
    while (i < sorted.length) {
      if (!excluded[i]) {
        i++;
        continue;
      }
      let j = i;
      while (j + 1 < sorted.length && excluded[j + 1]) j++;
      // Extend to the midpoints toward the neighbouring included samples.
      const x0 = i > 0 ? (sorted[i - 1]!.r + sorted[i]!.r) / 2 : sorted[i]!.r;
      const x1 = j < sorted.length - 1 ? (sorted[j]!.r + sorted[j + 1]!.r) / 2 : sorted[j]!.r;
      bands.push({ x0, x1, label: `fraction ${f}` });
      i = j + 1;
    }
  }
  return { bands, levels };
}

function buildFigS2(dir: string): string {
  const dyn = loadCsv(path.join(dir, "dynamic_range.csv"), dynamicRangeRowSchema);
  if (dyn.length === 0) {
    throw new InputError("figS2: dynamic_range.csv contains no data rows");
  }
  const lw = loadCsv(path.join(dir, "linewidth_sweep.csv"), linewidthRowSchema);
  const ratios = [...new Set(lw.map((row) => row.width_ratio))].sort((a, b) => a - b);
  if (ratios.length === 0) {
    throw new InputError("figS2: linewidth_sweep.csv contains no data rows");
  }
  const narrowest = ratios[0]!;
  const line: PlotSeries = {
    name: `enhancement (source width ${narrowest} linewidths)`,
    points: lw
      .filter((row) => row.width_ratio === narrowest)
      .sort((a, b) => a.r - b.r)
      .map((row): [number, number] => [row.r, row.snr_vs_classical_mzi]),
  };
  const { bands, levels } = exclusionBands(dyn);
  return renderLineChart({
    figureId: "figS2",
    title: "Enhancement with dynamic-range exclusion regions",
    xLabel: "coupling mirror reflectivity r",
    yLabel: "SNR enhancement vs classical MZI",
    xScale: "linear",
    yScale: "linear",
    series: [line],
    bands,
    bandCount: levels,
  });
}

// ── registry ─────────────────────────────────────────────────────────────────

export const RECIPES: Record<string, FigureRecipe> = {
  fig2: {
    id: "fig2",
    title: "Coincidence spectra vs coupling",
    inputs: ["spectrum_entangled_wgm_mzi_r*_a*_w0.csv (two or more couplings)"],
    xLabel: "detuning (units of linewidth)",
    yLabel: "coincidence probability",
    xScale: "linear",
    yScale: "linear",
    expectedSeries: null,
    build: buildFig2,
  },
  fig3: {
    id: "fig3",
    title: "Output spectra of the three measurement cases",
    inputs: FIG3_CASES.map((c) => `spectrum_${c}_r*_a*_w0.csv`),
    xLabel: "detuning (units of linewidth)",
    yLabel: "normalised signal",
    xScale: "linear",
    yScale: "linear",
    expectedSeries: 4,
    build: buildFig3,
  },
  fig4a: {
    id: "fig4a",
    title: "Resonance-shift noise vs photon budget",
    inputs: ["photon_sweep.csv"],
    xLabel: "photons per time bin",
    yLabel: "3-sigma shift noise (fm)",
    xScale: "log",
    yScale: "log",
    expectedSeries: 3,
    build: buildFig4a,
  },
  fig4b: {
    id: "fig4b",
    title: "SNR enhancement vs single-waveguide readout",
    inputs: ["coupling_map.csv"],
    xLabel: "coupling mirror reflectivity r",
    yLabel: "round-trip amplitude alpha",
    xScale: "linear",
    yScale: "linear",
    expectedSeries: null,
    build: buildFig4b,
  },
  fig4c: {
    id: "fig4c",
    title: "SNR enhancement vs classical interferometric readout",
    inputs: ["coupling_map.csv"],
    xLabel: "coupling mirror reflectivity r",
    yLabel: "round-trip amplitude alpha",
    xScale: "linear",
    yScale: "linear",
    expectedSeries: null,
    build: buildFig4c,
  },
  fig5: {
    id: "fig5",
    title: "Enhancement vs coupling for broadened sources",
    inputs: ["linewidth_sweep.csv (exactly 5 width_ratio values)"],
    xLabel: "coupling mirror reflectivity r",
    yLabel: "SNR enhancement vs classical MZI",
    xScale: "linear",
    yScale: "linear",
    expectedSeries: 5,
    build: buildFig5,
  },
  figS1: {
    id: "figS1",
    title: "Difference vs single-output interferometric readout",
    inputs: ["photon_sweep.csv (including the single-output case)"],
    xLabel: "photons per time bin",
    yLabel: "3-sigma shift noise (fm)",
    xScale: "log",
    yScale: "log",
    expectedSeries: 2,
    build: buildFigS1,
  },
  figS2: {
    id: "figS2",
    title: "Enhancement with dynamic-range exclusion regions",
    inputs: ["dynamic_range.csv", "linewidth_sweep.csv"],
    xLabel: "coupling mirror reflectivity r",
    yLabel: "SNR enhancement vs classical MZI",
    xScale: "linear",
    yScale: "linear",
    expectedSeries: 1,
    build: buildFigS2,
  },
};

export const FIGURE_IDS = Object.keys(RECIPES);
