use crate::error::{Error, Result};
use crate::graph::{Instance, WeightKind};

/// Symmetric `2n`-city instance equivalent to an asymmetric one.
///
/// City `i` becomes an in-copy `i` and an out-copy `n + i` joined at zero
/// cost. Arc `i -> j` becomes the edge `(n + i, j)` with weight
/// `c(i, j) + K`, and every other pair costs `H`. With `K > n * max c` and
/// `H > n * (K + max c)` an optimal tour uses all couplings and no `H` edge,
/// so optimal lengths differ by exactly `n * K`.
#[derive(Clone, Debug)]
pub struct AtspReduction {
    pub instance: Instance,
    /// `optimal symmetric length = optimal asymmetric cost + constant`.
    pub constant: f64,
    n: usize,
    costs: Vec<f64>,
}

/// Reduces the row-major `n x n` cost matrix; the diagonal is ignored.
pub fn atsp_to_tsp(n: usize, costs: &[f64]) -> Result<AtspReduction> {
    if n < 3 {
        return Err(Error::InvalidInstance(format!(
            "ATSP reduction needs at least 3 cities, got {n}"
        )));
    }
    if costs.len() != n * n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: format!("{} entries", costs.len()),
        });
    }
    let mut cmax = 0.0f64;
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let c = costs[i * n + j];
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "arc cost ({i},{j}) = {c} is not a finite non-negative number"
                )));
            }
            cmax = cmax.max(c);
        }
    }
    let k = n as f64 * cmax + 1.0;
    let h = 2.0 * n as f64 * k;
    let m = 2 * n;
    let mut dist = vec![h; m * m];
    for a in 0..m {
        dist[a * m + a] = 0.0;
    }
    for i in 0..n {
        let out = n + i;
        dist[i * m + out] = 0.0;
        dist[out * m + i] = 0.0;
        for j in (0..n).filter(|&j| j != i) {
            let w = costs[i * n + j] + k;
            dist[out * m + j] = w;
            dist[j * m + out] = w;
        }
    }
    Ok(AtspReduction {
        instance: Instance::from_flat(format!("atsp-{n}"), WeightKind::Explicit, m, dist)?,
        constant: n as f64 * k,
        n,
        costs: costs.to_vec(),
    })
}

impl AtspReduction {
    pub fn original_size(&self) -> usize {
        self.n
    }

    /// Cost of the directed cycle visiting `order`.
    pub fn atsp_cost(&self, order: &[usize]) -> f64 {
        let n = self.n;
        (0..order.len())
            .map(|p| self.costs[order[p] * n + order[(p + 1) % order.len()]])
            .sum()
    }

    /// Directed city order read off a tour of the reduced instance. The
    /// tour is oriented so that couplings run in-copy to out-copy, and each
    /// city is placed where either copy first appears.
    pub fn back_map(&self, tour: &[usize]) -> Result<Vec<usize>> {
        let n = self.n;
        let m = 2 * n;
        if tour.len() != m || !crate::graph::Tour::new(&self.instance, tour.to_vec()).is_ok() {
            return Err(Error::InvalidTour(format!("expected a tour of the {m} reduced cities")));
        }
        let forward = (0..m)
            .find_map(|p| {
                let (a, b) = (tour[p], tour[(p + 1) % m]);
                if a + n == b {
                    Some(true)
                } else if b + n == a {
                    Some(false)
                } else {
                    None
                }
            })
            .unwrap_or(true);
        let walk: Vec<usize> = if forward {
            tour.to_vec()
        } else {
            tour.iter().rev().copied().collect()
        };
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for city in walk.into_iter().map(|v| v % n) {
            if !seen[city] {
                seen[city] = true;
                order.push(city);
            }
        }
        Ok(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::held_karp;
    use crate::io::greedy_decode;
    use crate::io::Heatmap;

    fn ring() -> Vec<f64> {
        // 0->1->2->0 costs 1, the reverse direction 10
        vec![0.0, 1.0, 10.0, 10.0, 0.0, 1.0, 1.0, 10.0, 0.0]
    }

    #[test]
    fn three_city_ring() {
        let r = atsp_to_tsp(3, &ring()).unwrap();
        let opt = held_karp(&r.instance).unwrap();
        let order = r.back_map(opt.tour.order()).unwrap();
        assert_eq!(r.atsp_cost(&order), 3.0);
        assert_eq!(opt.length - r.constant, 3.0);
    }

    #[test]
    fn back_map_always_gives_a_permutation() {
        let r = atsp_to_tsp(3, &ring()).unwrap();
        let hm = Heatmap::new(6, (0..36).map(|k| ((k * 7) % 11) as f64).collect()).unwrap();
        let t = greedy_decode(&hm, &r.instance).unwrap();
        let mut order = r.back_map(t.order()).unwrap();
        order.sort_unstable();
        assert_eq!(order, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(atsp_to_tsp(2, &[0.0, 1.0, 1.0, 0.0]).is_err());
        assert!(atsp_to_tsp(3, &[0.0; 8]).is_err());
        let mut neg = ring();
        neg[1] = -1.0;
        assert!(atsp_to_tsp(3, &neg).is_err());
        let r = atsp_to_tsp(3, &ring()).unwrap();
        assert!(r.back_map(&[0, 1, 2]).is_err());
    }
}
