use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::pi::PiSchedule;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    TwoOpt,
    TwoOptRtdl,
    TwoOptRtdlFull,
    TwoOptRtdlOptD,
    ThreeOpt,
    ThreeOptRtdl,
    ThreeOptRtdlOptD,
    TwoOptDist,
    TwoOptAlpha,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::TwoOpt,
        Algorithm::TwoOptRtdl,
        Algorithm::TwoOptRtdlFull,
        Algorithm::TwoOptRtdlOptD,
        Algorithm::ThreeOpt,
        Algorithm::ThreeOptRtdl,
        Algorithm::ThreeOptRtdlOptD,
        Algorithm::TwoOptDist,
        Algorithm::TwoOptAlpha,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::TwoOpt => "2opt",
            Algorithm::TwoOptRtdl => "2opt-rtdl",
            Algorithm::TwoOptRtdlFull => "2opt-rtdl-full",
            Algorithm::TwoOptRtdlOptD => "2opt-rtdl-optd",
            Algorithm::ThreeOpt => "3opt",
            Algorithm::ThreeOptRtdl => "3opt-rtdl",
            Algorithm::ThreeOptRtdlOptD => "3opt-rtdl-optd",
            Algorithm::TwoOptDist => "2opt-dist",
            Algorithm::TwoOptAlpha => "2opt-alpha",
        }
    }

    /// The π-shifted counterpart, if one exists.
    pub fn with_opt_d(self) -> Option<Algorithm> {
        match self {
            Algorithm::TwoOptRtdl | Algorithm::TwoOptRtdlOptD => Some(Algorithm::TwoOptRtdlOptD),
            Algorithm::ThreeOptRtdl | Algorithm::ThreeOptRtdlOptD => Some(Algorithm::ThreeOptRtdlOptD),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase().replace('_', "-");
        Algorithm::ALL.into_iter().find(|a| a.name() == wanted).ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            Error::InvalidArgument(format!(
                "unknown algorithm '{s}' (expected one of {})",
                names.join(", ")
            ))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    /// Penalty refresh period in improvement rounds. `None` picks by size:
    /// 1 up to 300 cities, 5 up to 1000, 100 beyond.
    pub freq: Option<usize>,
    /// Initial number of leading tour positions whose edges are candidates.
    pub granularity: usize,
    /// Window growth when the current window holds no improving move.
    pub batch_step: usize,
    /// Seconds.
    pub time_limit: f64,
    pub max_iters: usize,
    pub seed: u64,
    pub pi_schedule: PiSchedule,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            algorithm: Algorithm::TwoOpt,
            freq: None,
            granularity: 10,
            batch_step: 10,
            time_limit: 20.0,
            max_iters: 1_000_000,
            seed: 0,
            pi_schedule: PiSchedule::default(),
        }
    }
}

impl SearchConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        SearchConfig {
            algorithm,
            ..Default::default()
        }
    }

    pub fn default_freq(n: usize) -> usize {
        match n {
            0..=300 => 1,
            301..=1000 => 5,
            _ => 100,
        }
    }

    pub fn effective_freq(&self, n: usize) -> usize {
        self.freq.unwrap_or_else(|| Self::default_freq(n))
    }

    pub fn validate(&self) -> Result<()> {
        if self.freq == Some(0) {
            return Err(Error::InvalidArgument("freq must be at least 1".into()));
        }
        if self.granularity == 0 {
            return Err(Error::InvalidArgument("granularity must be at least 1".into()));
        }
        if self.batch_step == 0 {
            return Err(Error::InvalidArgument("batch_step must be at least 1".into()));
        }
        if self.time_limit.is_nan() || self.time_limit <= 0.0 {
            return Err(Error::InvalidArgument("time_limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Accepted improving moves.
    pub iterations: usize,
    /// Candidate moves evaluated, including the final unsuccessful scan.
    pub trials: u64,
    /// Trials spent to find each accepted move.
    pub trials_per_iter: Vec<u64>,
    /// Seconds.
    pub wall_time: f64,
    pub final_length: f64,
    /// Stopped at a local optimum (not at a limit).
    pub converged: bool,
    pub hit_time_limit: bool,
}

impl SearchStats {
    pub fn mean_trials_per_iter(&self) -> Option<f64> {
        if self.trials_per_iter.is_empty() {
            None
        } else {
            Some(self.trials_per_iter.iter().sum::<u64>() as f64 / self.trials_per_iter.len() as f64)
        }
    }
}
