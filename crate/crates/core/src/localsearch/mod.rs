//! 2-opt and 3-opt with pluggable edge orderings, including the
//! barcode-penalty ordering, plus the π-shift distance transform.

mod config;
mod ordering;
mod pi;
mod three_opt;
mod two_opt;

pub use config::{Algorithm, SearchConfig, SearchStats};
pub use ordering::{alpha_desc, dist_desc, penalty_desc, sequential};
pub use pi::{apply_pi, pi_transform, PiSchedule, PiTransform, PiVector};
pub use three_opt::{three_opt, three_opt_rtdl, ThreeOptMove};
pub use two_opt::{
    apply_two_opt, two_opt, two_opt_alpha, two_opt_delta, two_opt_dist, two_opt_rtdl, two_opt_rtdl_full,
};

use crate::error::{Error, Result};
use crate::graph::{Instance, Tour};

/// A move is accepted only if it shortens the tour by more than this.
pub const IMPROVEMENT_EPS: f64 = 1e-10;

/// Runs the algorithm selected in `cfg`.
pub fn run(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    match cfg.algorithm {
        Algorithm::TwoOpt => two_opt(inst, tour0, cfg),
        Algorithm::TwoOptRtdl => two_opt_rtdl(inst, tour0, cfg),
        Algorithm::TwoOptRtdlFull => two_opt_rtdl_full(inst, tour0, cfg),
        Algorithm::TwoOptDist => two_opt_dist(inst, tour0, cfg),
        Algorithm::TwoOptAlpha => two_opt_alpha(inst, tour0, cfg),
        Algorithm::ThreeOpt => three_opt(inst, tour0, cfg),
        Algorithm::ThreeOptRtdl => three_opt_rtdl(inst, tour0, cfg),
        Algorithm::TwoOptRtdlOptD => with_opt_d(inst, tour0, cfg, two_opt_rtdl),
        Algorithm::ThreeOptRtdlOptD => with_opt_d(inst, tour0, cfg, three_opt_rtdl),
    }
}

type Search = fn(&Instance, &Tour, &SearchConfig) -> Result<(Tour, SearchStats)>;

/// Searches on the π-shifted instance; lengths are reported on the original.
fn with_opt_d(inst: &Instance, tour0: &Tour, cfg: &SearchConfig, search: Search) -> Result<(Tour, SearchStats)> {
    let started = std::time::Instant::now();
    if inst.n() < 3 {
        return search(inst, tour0, cfg);
    }
    let transform = pi_transform(inst, &cfg.pi_schedule)?;
    let shifted_start = Tour::new(&transform.instance, tour0.order().to_vec())?;
    let mut inner_cfg = cfg.clone();
    inner_cfg.time_limit = (cfg.time_limit - started.elapsed().as_secs_f64()).max(f64::MIN_POSITIVE);
    let (shifted_tour, mut stats) = search(&transform.instance, &shifted_start, &inner_cfg)?;
    let tour = Tour::new(inst, shifted_tour.into_order())?;
    stats.final_length = tour.length();
    stats.wall_time = started.elapsed().as_secs_f64();
    Ok((tour, stats))
}

pub(crate) fn check_inputs(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<()> {
    cfg.validate()?;
    if tour0.len() != inst.n() {
        return Err(Error::InvalidTour(format!(
            "initial tour has {} cities, instance has {}",
            tour0.len(),
            inst.n()
        )));
    }
    Ok(())
}
