export { EmptyInput, SchemaMismatch } from "./errors.js";
export {
  TRAJECTORY_COLUMNS,
  column,
  parseTrajectoryCsv,
  readRmseCsv,
  readTrajectoryCsv,
} from "./csv.js";
export type { LogMeta, RmseReportRow, TrajectoryLog } from "./csv.js";
export {
  ANGLE_COLUMNS,
  ERROR_COLUMNS,
  attitudeTotalRmse,
  channelRmse,
  gaussianKde,
  mean,
  meanSquare,
  pooledAttitudeErrors,
  quantile,
  rmse,
  standardDeviation,
  totalRmse,
} from "./stats.js";
export { renderTracking } from "./tracking.js";
export type { TrackingSpec } from "./tracking.js";
export { renderViolin } from "./violin.js";
export type { ViolinSpec } from "./violin.js";
export { main as cliMain } from "./cli.js";
