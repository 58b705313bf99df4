use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{held_karp, HELD_KARP_MAX};
use crate::graph::random_tour;
use crate::io::{gen_euclidean, gen_nonmetric};
use crate::localsearch::{two_opt, SearchConfig};
use crate::rtdl::edge_penalties;

/// Edge-membership study: how often a tour edge in a given penalty rank
/// bin belongs to the optimal tour.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbStudySpec {
    pub n: usize,
    pub trials: usize,
    /// Improvement caps for the truncated 2-opt runs producing the tours.
    pub iters: Vec<usize>,
    pub bins: usize,
    pub seed: u64,
    pub nonmetric: bool,
}

impl Default for ProbStudySpec {
    fn default() -> Self {
        ProbStudySpec {
            n: 12,
            trials: 200,
            iters: vec![5],
            bins: 10,
            seed: 0,
            nonmetric: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbBin {
    pub iters: usize,
    /// 0 holds the lowest penalties.
    pub bin: usize,
    pub edges: usize,
    pub members: usize,
    pub probability: Option<f64>,
}

pub const PROB_HEADER: &str = "iters,bin,edges,members,probability";

pub fn prob_csv(rows: &[ProbBin]) -> String {
    let mut s = format!("{PROB_HEADER}\n");
    for r in rows {
        let p = r.probability.map(|p| p.to_string()).unwrap_or_default();
        s.push_str(&format!("{},{},{},{},{}\n", r.iters, r.bin, r.edges, r.members, p));
    }
    s
}

/// Trial `t` draws instance and start tour from seed `seed + t`. Tour edges
/// are ranked by ascending penalty, ties by edge order, and rank `r` falls
/// in bin `r * bins / n`.
pub fn prob_study(spec: &ProbStudySpec) -> Result<Vec<ProbBin>> {
    if !(3..=HELD_KARP_MAX).contains(&spec.n) {
        bail!(
            "probability study needs 3..={HELD_KARP_MAX} cities for exact optima, got {}",
            spec.n
        );
    }
    if spec.trials == 0 || spec.bins == 0 || spec.iters.is_empty() {
        bail!("trials, bins and the iteration list must be non-empty");
    }
    let n = spec.n;
    let per_trial: Vec<Vec<(usize, usize)>> = (0..spec.trials as u64)
        .into_par_iter()
        .map(|t| -> Result<Vec<(usize, usize)>> {
            let s = spec.seed.wrapping_add(t);
            let inst = if spec.nonmetric {
                gen_nonmetric(n, s)?
            } else {
                gen_euclidean(n, s)?
            };
            let opt = held_karp(&inst)?;
            let start = random_tour(&inst, s);
            let mut counts = vec![(0usize, 0usize); spec.iters.len() * spec.bins];
            for (k, &cap) in spec.iters.iter().enumerate() {
                let cfg = SearchConfig {
                    max_iters: cap,
                    time_limit: f64::MAX,
                    ..SearchConfig::default()
                };
                let (tour, _) = two_opt(&inst, &start, &cfg)?;
                let mut ranked = edge_penalties(&inst, &tour)?.entries;
                ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.key().cmp(&b.0.key())));
                for (rank, (edge, _)) in ranked.iter().enumerate() {
                    let cell = &mut counts[k * spec.bins + rank * spec.bins / n];
                    cell.0 += 1;
                    cell.1 += usize::from(opt.tour.contains_edge(edge.u, edge.v));
                }
            }
            Ok(counts)
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(spec.iters.len() * spec.bins);
    for (k, &cap) in spec.iters.iter().enumerate() {
        for bin in 0..spec.bins {
            let (edges, members) = per_trial
                .iter()
                .map(|c| c[k * spec.bins + bin])
                .fold((0, 0), |a, c| (a.0 + c.0, a.1 + c.1));
            rows.push(ProbBin {
                iters: cap,
                bin,
                edges,
                members,
                probability: (edges > 0).then(|| members as f64 / edges as f64),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_gives_zero_or_one() {
        let spec = ProbStudySpec {
            trials: 1,
            ..Default::default()
        };
        let rows = prob_study(&spec).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows.iter().map(|r| r.edges).sum::<usize>(), 12);
        for r in rows.iter().filter_map(|r| r.probability) {
            assert!(r == 0.0 || r == 1.0);
        }
    }

    #[test]
    fn deterministic_and_complete() {
        let spec = ProbStudySpec {
            n: 8,
            trials: 6,
            iters: vec![0, 3],
            bins: 4,
            ..Default::default()
        };
        let rows = prob_study(&spec).unwrap();
        assert_eq!(rows, prob_study(&spec).unwrap());
        for cap in [0, 3] {
            let edges: usize = rows.iter().filter(|r| r.iters == cap).map(|r| r.edges).sum();
            assert_eq!(edges, 6 * 8);
        }
    }

    #[test]
    fn size_limit() {
        let spec = ProbStudySpec {
            n: 19,
            ..Default::default()
        };
        assert!(prob_study(&spec).is_err());
    }
}
