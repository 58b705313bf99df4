//! Exact solvers for small instances: Held-Karp dynamic programming and
//! exhaustive enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{tour_length, Instance, Tour};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactMethod {
    HeldKarp,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    /// Starts at city 0; of the two directions the one with the smaller
    /// second city.
    pub tour: Tour,
    pub length: f64,
    pub method: ExactMethod,
}

pub const HELD_KARP_MAX: usize = 18;
pub const BRUTE_FORCE_MAX: usize = 10;

/// Optimal tour by dynamic programming over subsets, anchored at city 0.
/// Among optimal tours the lexicographically smallest is returned.
pub fn held_karp(inst: &Instance) -> Result<ExactResult> {
    let n = inst.n();
    if !(3..=HELD_KARP_MAX).contains(&n) {
        return Err(Error::SizeOutOfRange {
            n,
            min: 3,
            max: HELD_KARP_MAX,
            hint: "use brute_force for tiny instances or supply a reference length",
        });
    }
    // cities 1..n map to bits 0..m
    let m = n - 1;
    let full = (1usize << m) - 1;
    // dp[s * m + j]: shortest path from 0 through exactly the cities in s,
    // ending at j (bit j set in s)
    let mut dp = vec![f64::INFINITY; (full + 1) * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = inst.dist(0, j + 1);
    }
    for s in 1..=full {
        for j in 0..m {
            if s & (1 << j) == 0 {
                continue;
            }
            let prev = s & !(1 << j);
            if prev == 0 {
                continue;
            }
            let mut best = f64::INFINITY;
            let mut rest = prev;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let c = dp[prev * m + k] + inst.dist(k + 1, j + 1);
                if c < best {
                    best = c;
                }
            }
            dp[s * m + j] = best;
        }
    }

    // Walk forward from 0. On a symmetric instance dp[r][j] is also the
    // cheapest way from j through r back to 0, so the next city is the
    // smallest j minimizing d(cur, j) + dp[r][j].
    let mut order = Vec::with_capacity(n);
    order.push(0);
    let mut remaining = full;
    let mut cur = 0usize;
    while remaining != 0 {
        let mut pick: Option<(f64, usize)> = None;
        let mut rest = remaining;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = inst.dist(cur, j + 1) + dp[remaining * m + j];
            if pick.is_none_or(|(b, _)| c < b) {
                pick = Some((c, j));
            }
        }
        let (_, j) = pick.expect("remaining is non-empty");
        order.push(j + 1);
        remaining &= !(1 << j);
        cur = j + 1;
    }
    if order[1] > order[n - 1] {
        order[1..].reverse();
    }
    let tour = Tour::new(inst, order)?;
    Ok(ExactResult {
        length: tour.length(),
        tour,
        method: ExactMethod::HeldKarp,
    })
}

/// Advances `p` to its next lexicographic permutation; false after the last.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("p[i + 1] > p[i]");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Optimal tour by enumerating every cycle through city 0 once per
/// direction. Ties go to the lexicographically smallest visit order.
pub fn brute_force(inst: &Instance) -> Result<ExactResult> {
    let n = inst.n();
    if !(3..=BRUTE_FORCE_MAX).contains(&n) {
        return Err(Error::SizeOutOfRange {
            n,
            min: 3,
            max: BRUTE_FORCE_MAX,
            hint: "use held_karp for up to 18 cities",
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = (f64::INFINITY, order.clone());
    loop {
        if order[1] < order[n - 1] {
            let len = tour_length(inst, &order);
            if len < best.0 {
                best = (len, order.clone());
            }
        }
        if !next_permutation(&mut order[1..]) {
            break;
        }
    }
    let tour = Tour::new(inst, best.1)?;
    Ok(ExactResult {
        length: tour.length(),
        tour,
        method: ExactMethod::BruteForce,
    })
}
