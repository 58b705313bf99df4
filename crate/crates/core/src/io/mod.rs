//! TSPLIB files, random instances, heatmaps, the asymmetric-to-symmetric
//! reduction and run reports.

mod atsp;
mod generate;
mod heatmap;
mod report;
mod tsplib;

pub use atsp::{atsp_to_tsp, AtspReduction};
pub use generate::{gen_euclidean, gen_nonmetric};
pub use heatmap::{greedy_decode, load_heatmap, Heatmap, HeatmapFormat};
pub use report::{gap_pct, read_csv, read_json, round_ms, write_csv, write_json, RunRecord, CSV_HEADER};
pub use tsplib::{att, ceil_2d, euc_2d, geo, parse_tsplib, write_tsplib, EdgeWeightFormat, ProblemType, TsplibFile};
