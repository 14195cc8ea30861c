export {
  CsvFormatError,
  EXPECTED_COLUMNS,
  parseSweepCsv,
  type ColumnName,
  type SweepFile,
  type SweepRow,
} from "./csv.js";
export { PLOT_KINDS, renderFigure, type PlotKind } from "./svg.js";
export { runPlot } from "./cli.js";
