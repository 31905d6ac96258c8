export { InputError, listInputs, loadCsv } from "./csv.js";
export type { FigureRecipe } from "./recipes.js";
export { FIGURE_IDS, RECIPES } from "./recipes.js";
export { renderFigure } from "./render.js";
export type {
  CouplingMapRow,
  DynamicRangeRow,
  LinewidthRow,
  MeasurementCase,
  PhotonSweepRow,
  SpectrumRow,
} from "./schemas.js";
export {
  couplingMapRowSchema,
  dynamicRangeRowSchema,
  linewidthRowSchema,
  MEASUREMENT_CASES,
  photonSweepRowSchema,
  spectrumRowSchema,
} from "./schemas.js";
export type { Band, HeatmapCell, Marker, PlotSeries, ScaleKind } from "./svg.js";
export { renderHeatmap, renderLineChart } from "./svg.js";
