use std::time::Instant;

use super::config::{SearchConfig, SearchStats};
use super::ordering::{ByAlpha, ByDistance, ByPenalty, Ranker, Sequential};
use super::{check_inputs, IMPROVEMENT_EPS};
use crate::error::Result;
use crate::graph::{Instance, Tour};
use crate::rtdl::alpha_scores;

/// Length change of the 2-opt move that removes the edges leaving positions
/// `i < j` and reverses `order[i + 1..=j]`.
#[inline]
pub fn two_opt_delta(inst: &Instance, order: &[usize], i: usize, j: usize) -> f64 {
    let n = order.len();
    let (a, b) = (order[i], order[i + 1]);
    let (c, d) = (order[j], order[(j + 1) % n]);
    inst.dist(a, c) + inst.dist(b, d) - inst.dist(a, b) - inst.dist(c, d)
}

#[inline]
pub fn apply_two_opt(order: &mut [usize], i: usize, j: usize) {
    order[i + 1..=j].reverse();
}

/// How the candidate window evolves.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Window {
    /// Every tour edge is a candidate.
    Full,
    /// Edges leaving the first `N` positions, `N` starting at `initial`
    /// and growing by `step` whenever the window holds no improving move.
    Growing { initial: usize, step: usize },
}

/// Every this many trials the clock is read.
const CLOCK_STRIDE: u64 = 256;

pub(crate) struct Clock {
    started: Instant,
    limit: f64,
}

impl Clock {
    pub(crate) fn start(limit: f64) -> Self {
        Clock {
            started: Instant::now(),
            limit,
        }
    }

    pub(crate) fn expired(&self) -> bool {
        self.elapsed() > self.limit
    }

    pub(crate) fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }

    pub(crate) fn check(&self, trials: u64) -> bool {
        trials.is_multiple_of(CLOCK_STRIDE) && self.expired()
    }
}

/// First-improvement 2-opt. After each accepted move the scan restarts
/// from the top of a freshly ranked candidate list.
pub(crate) fn search_2opt(
    inst: &Instance,
    tour0: &Tour,
    cfg: &SearchConfig,
    ranker: &mut dyn Ranker,
    window: Window,
) -> Result<(Tour, SearchStats)> {
    check_inputs(inst, tour0, cfg)?;
    let clock = Clock::start(cfg.time_limit);
    let n = inst.n();
    let mut order = tour0.order().to_vec();
    let mut stats = SearchStats::default();

    if n < 4 {
        stats.converged = true;
        stats.final_length = tour0.length();
        stats.wall_time = clock.elapsed();
        return Ok((tour0.clone(), stats));
    }

    let (mut width, step) = match window {
        Window::Full => (n, 0),
        Window::Growing { initial, step } => (initial.clamp(1, n), step),
    };
    let mut positions: Vec<usize> = Vec::with_capacity(n);
    let mut since_last = 0u64;

    'restart: loop {
        if stats.iterations >= cfg.max_iters {
            break;
        }
        if clock.expired() {
            stats.hit_time_limit = true;
            break;
        }
        positions.clear();
        positions.extend(0..width);
        ranker.rank(inst, &order, stats.iterations, &mut positions)?;

        for a in 0..positions.len() {
            for b in (a + 1)..positions.len() {
                let (i, j) = if positions[a] < positions[b] {
                    (positions[a], positions[b])
                } else {
                    (positions[b], positions[a])
                };
                // adjacent edges share a city: no 2-opt move
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                stats.trials += 1;
                since_last += 1;
                if two_opt_delta(inst, &order, i, j) < -IMPROVEMENT_EPS {
                    apply_two_opt(&mut order, i, j);
                    stats.iterations += 1;
                    stats.trials_per_iter.push(since_last);
                    since_last = 0;
                    continue 'restart;
                }
                if clock.check(stats.trials) {
                    stats.hit_time_limit = true;
                    break 'restart;
                }
            }
        }

        if width < n {
            width = (width + step).min(n);
        } else {
            stats.converged = true;
            break;
        }
    }

    let tour = Tour::from_valid(inst, order);
    stats.final_length = tour.length();
    stats.wall_time = clock.elapsed();
    Ok((tour, stats))
}

/// Plain 2-opt over all edge pairs in sequential order.
pub fn two_opt(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    search_2opt(inst, tour0, cfg, &mut Sequential, Window::Full)
}

/// 2-opt over a growing window of leading tour positions whose edges are
/// probed in descending barcode-penalty order.
pub fn two_opt_rtdl(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    let mut ranker = ByPenalty::new(inst, cfg.effective_freq(inst.n()))?;
    let window = Window::Growing {
        initial: cfg.granularity,
        step: cfg.batch_step,
    };
    search_2opt(inst, tour0, cfg, &mut ranker, window)
}

/// Penalty-ordered 2-opt over all edges at every stage.
pub fn two_opt_rtdl_full(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    let mut ranker = ByPenalty::new(inst, cfg.effective_freq(inst.n()))?;
    search_2opt(inst, tour0, cfg, &mut ranker, Window::Full)
}

/// Same windowing as [`two_opt_rtdl`], edges ordered by length descending.
pub fn two_opt_dist(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    let window = Window::Growing {
        initial: cfg.granularity,
        step: cfg.batch_step,
    };
    search_2opt(inst, tour0, cfg, &mut ByDistance, window)
}

/// Same windowing as [`two_opt_rtdl`], edges ordered by α-nearness
/// descending (special vertex 0).
pub fn two_opt_alpha(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    if inst.n() < 3 {
        return two_opt(inst, tour0, cfg);
    }
    let mut ranker = ByAlpha(alpha_scores(inst, 0)?);
    let window = Window::Growing {
        initial: cfg.granularity,
        step: cfg.batch_step,
    };
    search_2opt(inst, tour0, cfg, &mut ranker, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_tour, tour_length, Point};
    use crate::localsearch::Algorithm;
    use proptest::prelude::*;

    fn square() -> Instance {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        Instance::euclidean("square", pts).unwrap()
    }

    fn random_points(n: usize, seed: u64) -> Instance {
        use rand::Rng;
        let mut rng = crate::graph::seeded_rng(seed);
        let pts = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        Instance::euclidean("rand", pts).unwrap()
    }

    #[test]
    fn uncrosses_the_square() {
        let inst = square();
        let crossing = Tour::new(&inst, vec![0, 2, 1, 3]).unwrap();
        assert!((crossing.length() - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        for f in [two_opt, two_opt_rtdl, two_opt_rtdl_full, two_opt_dist, two_opt_alpha] {
            let (t, stats) = f(&inst, &crossing, &SearchConfig::default()).unwrap();
            assert!((t.length() - 4.0).abs() < 1e-12);
            assert_eq!(stats.iterations, 1);
            assert!(stats.converged);
        }
    }

    #[test]
    fn optimal_tour_is_left_alone() {
        let inst = square();
        let t0 = Tour::new(&inst, vec![0, 1, 2, 3]).unwrap();
        let (t, stats) = two_opt(&inst, &t0, &SearchConfig::default()).unwrap();
        assert_eq!(t, t0);
        assert_eq!(stats.iterations, 0);
        assert!(stats.trials > 0);
    }

    #[test]
    fn three_cities_unchanged() {
        let inst = Instance::euclidean(
            "tri",
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)],
        )
        .unwrap();
        let t0 = Tour::new(&inst, vec![2, 0, 1]).unwrap();
        let (t, stats) = two_opt_rtdl(&inst, &t0, &SearchConfig::default()).unwrap();
        assert_eq!(t, t0);
        assert_eq!(stats.trials, 0);
    }

    #[test]
    fn iteration_cap_is_respected() {
        let inst = random_points(40, 3);
        let t0 = random_tour(&inst, 9);
        let cfg = SearchConfig {
            max_iters: 3,
            ..Default::default()
        };
        let (_, stats) = two_opt(&inst, &t0, &cfg).unwrap();
        assert_eq!(stats.iterations, 3);
        assert!(!stats.converged);
        assert_eq!(stats.trials_per_iter.len(), 3);
    }

    #[test]
    fn tiny_time_limit_sets_flag() {
        let inst = random_points(300, 4);
        let t0 = random_tour(&inst, 4);
        let cfg = SearchConfig {
            time_limit: 1e-4,
            ..Default::default()
        };
        let (t, stats) = two_opt(&inst, &t0, &cfg).unwrap();
        assert!(stats.hit_time_limit);
        assert!(!stats.converged);
        assert!(t.length() <= t0.length());
    }

    #[test]
    fn stale_penalties_still_converge() {
        let inst = random_points(60, 5);
        let t0 = random_tour(&inst, 5);
        for freq in [1, 3, 50] {
            let cfg = SearchConfig {
                algorithm: Algorithm::TwoOptRtdl,
                freq: Some(freq),
                ..Default::default()
            };
            let (t, stats) = two_opt_rtdl(&inst, &t0, &cfg).unwrap();
            assert!(stats.converged);
            // converged under a full window means 2-opt optimal
            let (again, s2) = two_opt(&inst, &t, &SearchConfig::default()).unwrap();
            assert_eq!(s2.iterations, 0);
            assert_eq!(again, t);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn delta_matches_recomputation(n in 5usize..40, seed in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
            let inst = random_points(n, seed);
            let t = random_tour(&inst, seed ^ 0xabc);
            let (i, j) = { let (x, y) = (a % n, b % n); (x.min(y), x.max(y)) };
            prop_assume!(j > i + 1 && !(i == 0 && j == n - 1));
            let mut order = t.order().to_vec();
            let delta = two_opt_delta(&inst, &order, i, j);
            apply_two_opt(&mut order, i, j);
            let after = tour_length(&inst, &order);
            prop_assert!((after - t.length() - delta).abs() <= 1e-9);
        }

        #[test]
        fn searches_never_lengthen_and_stay_valid(n in 4usize..30, seed in any::<u64>()) {
            let inst = random_points(n, seed);
            let t0 = random_tour(&inst, seed.wrapping_add(1));
            for algo in [Algorithm::TwoOpt, Algorithm::TwoOptRtdl, Algorithm::TwoOptRtdlFull] {
                let cfg = SearchConfig::new(algo);
                let (t, stats) = crate::localsearch::run(&inst, &t0, &cfg).unwrap();
                prop_assert!(t.length() <= t0.length() + 1e-12);
                prop_assert!(Tour::new(&inst, t.order().to_vec()).is_ok());
                prop_assert!(stats.trials >= stats.iterations as u64);
                prop_assert_eq!(stats.trials_per_iter.len(), stats.iterations);
                let (t2, s2) = crate::localsearch::run(&inst, &t0, &cfg).unwrap();
                prop_assert_eq!(t2, t);
                prop_assert_eq!(s2.trials_per_iter, stats.trials_per_iter);
            }
        }
    }
}
