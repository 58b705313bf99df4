use serde::{Deserialize, Serialize};

use super::config::{SearchConfig, SearchStats};
use super::ordering::{ByPenalty, Ranker, Sequential};
use super::two_opt::{search_2opt, Clock, Window};
use super::{check_inputs, IMPROVEMENT_EPS};
use crate::error::Result;
use crate::graph::{Instance, Tour};

/// Reconnection of the three segments left after cutting the edges leaving
/// positions `i < j < k`. With `a b` the first cut edge, `c d` the second
/// and `e f` the third, the tour is `A=[..a] B=[b..c] C=[d..e] D=[f..]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreeOptMove {
    /// `A rev(B) C D`
    ReverseB,
    /// `A B rev(C) D`
    ReverseC,
    /// `A rev(C) rev(B) D`, a 2-opt on the outer cuts
    ReverseBC,
    /// `A rev(B) rev(C) D`
    ReverseBoth,
    /// `A C B D`
    Swap,
    /// `A C rev(B) D`
    SwapReverseB,
    /// `A rev(C) B D`
    SwapReverseC,
}

impl ThreeOptMove {
    /// Fixed probing order: the three pure reversals first.
    pub const ALL: [ThreeOptMove; 7] = [
        ThreeOptMove::ReverseB,
        ThreeOptMove::ReverseC,
        ThreeOptMove::ReverseBC,
        ThreeOptMove::ReverseBoth,
        ThreeOptMove::Swap,
        ThreeOptMove::SwapReverseB,
        ThreeOptMove::SwapReverseC,
    ];

    /// Length change of this reconnection.
    pub fn delta(self, inst: &Instance, order: &[usize], i: usize, j: usize, k: usize) -> f64 {
        let n = order.len();
        let (a, b, c, d, e, f) = (
            order[i],
            order[i + 1],
            order[j],
            order[j + 1],
            order[k],
            order[(k + 1) % n],
        );
        let w = |x, y| inst.dist(x, y);
        let removed = w(a, b) + w(c, d) + w(e, f);
        let added = match self {
            ThreeOptMove::ReverseB => w(a, c) + w(b, d) + w(e, f),
            ThreeOptMove::ReverseC => w(a, b) + w(c, e) + w(d, f),
            ThreeOptMove::ReverseBC => w(a, e) + w(d, c) + w(b, f),
            ThreeOptMove::ReverseBoth => w(a, c) + w(b, e) + w(d, f),
            ThreeOptMove::Swap => w(a, d) + w(e, b) + w(c, f),
            ThreeOptMove::SwapReverseB => w(a, d) + w(e, c) + w(b, f),
            ThreeOptMove::SwapReverseC => w(a, e) + w(d, b) + w(c, f),
        };
        added - removed
    }

    pub fn apply(self, order: &mut Vec<usize>, i: usize, j: usize, k: usize) {
        let seg_b = &order[i + 1..=j];
        let seg_c = &order[j + 1..=k];
        let mut middle = Vec::with_capacity(k - i);
        let rev = |s: &[usize]| s.iter().rev().copied().collect::<Vec<_>>();
        match self {
            ThreeOptMove::ReverseB => {
                middle.extend(rev(seg_b));
                middle.extend_from_slice(seg_c);
            }
            ThreeOptMove::ReverseC => {
                middle.extend_from_slice(seg_b);
                middle.extend(rev(seg_c));
            }
            ThreeOptMove::ReverseBC => {
                middle.extend(rev(seg_c));
                middle.extend(rev(seg_b));
            }
            ThreeOptMove::ReverseBoth => {
                middle.extend(rev(seg_b));
                middle.extend(rev(seg_c));
            }
            ThreeOptMove::Swap => {
                middle.extend_from_slice(seg_c);
                middle.extend_from_slice(seg_b);
            }
            ThreeOptMove::SwapReverseB => {
                middle.extend_from_slice(seg_c);
                middle.extend(rev(seg_b));
            }
            ThreeOptMove::SwapReverseC => {
                middle.extend(rev(seg_c));
                middle.extend_from_slice(seg_b);
            }
        }
        order.splice(i + 1..=k, middle);
    }
}

fn search_3opt(
    inst: &Instance,
    tour0: &Tour,
    cfg: &SearchConfig,
    ranker: &mut dyn Ranker,
) -> Result<(Tour, SearchStats)> {
    check_inputs(inst, tour0, cfg)?;
    let n = inst.n();
    if n < 6 {
        return search_2opt(inst, tour0, cfg, ranker, Window::Full);
    }
    let clock = Clock::start(cfg.time_limit);
    let mut order = tour0.order().to_vec();
    let mut stats = SearchStats::default();
    let mut positions: Vec<usize> = Vec::with_capacity(n);
    let mut since_last = 0u64;

    // The first cut is the highest-ranked of the three; the other two come
    // later in the ranking, so every triple is visited once.
    'restart: loop {
        if stats.iterations >= cfg.max_iters {
            break;
        }
        if clock.expired() {
            stats.hit_time_limit = true;
            break;
        }
        positions.clear();
        positions.extend(0..n);
        ranker.rank(inst, &order, stats.iterations, &mut positions)?;

        for x in 0..n {
            for y in (x + 1)..n {
                for z in (y + 1)..n {
                    let mut cut = [positions[x], positions[y], positions[z]];
                    cut.sort_unstable();
                    let [i, j, k] = cut;
                    stats.trials += 1;
                    since_last += 1;
                    for mv in ThreeOptMove::ALL {
                        if mv.delta(inst, &order, i, j, k) < -IMPROVEMENT_EPS {
                            mv.apply(&mut order, i, j, k);
                            stats.iterations += 1;
                            stats.trials_per_iter.push(since_last);
                            since_last = 0;
                            continue 'restart;
                        }
                    }
                    if clock.check(stats.trials) {
                        stats.hit_time_limit = true;
                        break 'restart;
                    }
                }
            }
        }
        stats.converged = true;
        break;
    }

    let tour = Tour::from_valid(inst, order);
    stats.final_length = tour.length();
    stats.wall_time = clock.elapsed();
    Ok((tour, stats))
}

/// First-improvement 3-opt over all position triples in sequential order.
pub fn three_opt(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    search_3opt(inst, tour0, cfg, &mut Sequential)
}

/// 3-opt whose first removed edge is taken in descending penalty order.
pub fn three_opt_rtdl(inst: &Instance, tour0: &Tour, cfg: &SearchConfig) -> Result<(Tour, SearchStats)> {
    let mut ranker = ByPenalty::new(inst, cfg.effective_freq(inst.n()))?;
    search_3opt(inst, tour0, cfg, &mut ranker)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_tour, seeded_rng, tour_length, Point};
    use crate::localsearch::two_opt;
    use proptest::prelude::*;
    use rand::Rng;

    fn random_points(n: usize, seed: u64) -> Instance {
        let mut rng = seeded_rng(seed);
        let pts = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        Instance::euclidean("rand", pts).unwrap()
    }

    #[test]
    fn square_falls_back_to_2opt() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let inst = Instance::euclidean("square", pts).unwrap();
        let crossing = Tour::new(&inst, vec![0, 2, 1, 3]).unwrap();
        for f in [three_opt, three_opt_rtdl] {
            let (t, _) = f(&inst, &crossing, &SearchConfig::default()).unwrap();
            assert!((t.length() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn three_opt_optimum_is_stable() {
        let inst = random_points(12, 1);
        let (t, _) = three_opt(&inst, &random_tour(&inst, 1), &SearchConfig::default()).unwrap();
        let (again, stats) = three_opt(&inst, &t, &SearchConfig::default()).unwrap();
        assert_eq!(again, t);
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn at_least_as_good_as_its_2opt_start() {
        for seed in 0..5 {
            let inst = random_points(8, seed);
            let t0 = random_tour(&inst, seed);
            let (t2, _) = two_opt(&inst, &t0, &SearchConfig::default()).unwrap();
            // 3-opt neighbourhoods contain every 2-opt move, so starting from
            // a 2-opt optimum can only improve
            let (t3, _) = three_opt(&inst, &t2, &SearchConfig::default()).unwrap();
            assert!(t3.length() <= t2.length() + 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn move_deltas_match_recomputation(n in 6usize..25, seed in any::<u64>(), picks in any::<[usize; 3]>()) {
            let inst = random_points(n, seed);
            let t = random_tour(&inst, seed ^ 7);
            let mut cut = picks.map(|p| p % n);
            cut.sort_unstable();
            prop_assume!(cut[0] < cut[1] && cut[1] < cut[2]);
            let [i, j, k] = cut;
            for mv in ThreeOptMove::ALL {
                let mut order = t.order().to_vec();
                let delta = mv.delta(&inst, &order, i, j, k);
                mv.apply(&mut order, i, j, k);
                prop_assert!(crate::graph::Tour::new(&inst, order.clone()).is_ok());
                prop_assert!((tour_length(&inst, &order) - t.length() - delta).abs() < 1e-9);
            }
        }
    }
}
