// ── row schemas for the simulator's CSV outputs ──────────────────────────────
//
// Each schema mirrors one CSV file format produced by the wgmsim CLI.  Cells
// arrive as strings from the parser and are converted here; column presence
// is checked separately (see csv.ts) so that a missing column is reported by
// name instead of surfacing as a cell-conversion failure.

import { z } from "zod";

function toNumber(v: string | number): number {
  if (typeof v === "number") return v;
  const s = v.trim();
  // Number("") === 0 would silently accept blank cells.
  return s === "" ? NaN : Number(s);
}

/** Cell that must parse as a finite number. */
const finite = z
  .union([z.string(), z.number()])
  .transform((v, ctx) => {
    const n = toNumber(v);
    if (!Number.isFinite(n)) {
      ctx.addIssue({ code: z.ZodIssueCode.custom, message: `expected a finite number, got ${JSON.stringify(v)}` });
      return z.NEVER;
    }
    return n;
  });

/** Cell that must parse as a number; "nan" is a legal "not satisfied" value. */
const finiteOrNan = z
  .union([z.string(), z.number()])
  .transform((v, ctx) => {
    if (typeof v === "string" && v.trim().toLowerCase() === "nan") return NaN;
    const n = toNumber(v);
    if (!Number.isFinite(n)) {
      ctx.addIssue({ code: z.ZodIssueCode.custom, message: `expected a number or nan, got ${JSON.stringify(v)}` });
      return z.NEVER;
    }
    return n;
  });

/** Cell that must be exactly 0 or 1. */
const flag = z
  .union([z.string(), z.number()])
  .transform((v, ctx) => {
    const n = toNumber(v);
    if (n !== 0 && n !== 1) {
      ctx.addIssue({ code: z.ZodIssueCode.custom, message: `expected 0 or 1, got ${JSON.stringify(v)}` });
      return z.NEVER;
    }
    return n;
  });

export const MEASUREMENT_CASES = [
  "classical_wgm",
  "classical_wgm_mzi",
  "entangled_wgm_mzi",
  "classical_wgm_mzi_single",
] as const;

export type MeasurementCase = (typeof MEASUREMENT_CASES)[number];

/** One sampled point of a spectrum (spectrum_<case>_r*_a*_w*.csv). */
export const spectrumRowSchema = z.object({
  detuning_gamma: finite,
  value: finite,
});
export type SpectrumRow = z.infer<typeof spectrumRowSchema>;

/** One (case, photon budget) cell of the noise sweep (photon_sweep.csv). */
export const photonSweepRowSchema = z.object({
  case: z.enum(MEASUREMENT_CASES),
  N: finite,
  delta_omega_3sigma_fm: finite,
});
export type PhotonSweepRow = z.infer<typeof photonSweepRowSchema>;

/** One (r, alpha) cell of the coupling map (coupling_map.csv). */
export const couplingMapRowSchema = z.object({
  r: finite,
  alpha: finite,
  snr_vs_classical_wgm: finite,
  snr_vs_classical_mzi: finite,
  dr_violation_flag: flag,
});
export type CouplingMapRow = z.infer<typeof couplingMapRowSchema>;

/** One (width_ratio, r) cell of the linewidth sweep (linewidth_sweep.csv). */
export const linewidthRowSchema = z.object({
  width_ratio: finite,
  r: finite,
  snr_vs_classical_mzi: finite,
});
export type LinewidthRow = z.infer<typeof linewidthRowSchema>;

/** One coupling point of the dynamic-range scan (dynamic_range.csv). */
export const dynamicRangeRowSchema = z.object({
  r: finite,
  dynamic_range_gamma: finite,
  noise_3sigma_gamma: finite,
  max_fraction_satisfied: finiteOrNan,
});
export type DynamicRangeRow = z.infer<typeof dynamicRangeRowSchema>;
