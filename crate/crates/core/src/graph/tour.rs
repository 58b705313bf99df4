use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{seeded_rng, seeded_rng_stream, Edge, Instance, TOUR_STREAM};
use crate::error::{Error, Result};

/// A Hamiltonian cycle given as a visit order, with its cached length.
///
/// Position `p` owns the edge `(order[p], order[(p + 1) % n])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tour {
    order: Vec<usize>,
    length: f64,
}

pub(crate) fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &c in order {
        if c >= n || seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

impl Tour {
    pub fn new(inst: &Instance, order: Vec<usize>) -> Result<Self> {
        if !is_permutation(&order, inst.n()) {
            return Err(Error::InvalidTour(format!(
                "visit order of length {} is not a permutation of 0..{}",
                order.len(),
                inst.n()
            )));
        }
        let length = tour_length(inst, &order);
        Ok(Tour { order, length })
    }

    /// Caller guarantees `order` is a permutation of `0..inst.n()`.
    pub(crate) fn from_valid(inst: &Instance, order: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&order, inst.n()));
        let length = tour_length(inst, &order);
        Tour { order, length }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Edge leaving position `p`.
    pub fn edge_at(&self, inst: &Instance, p: usize) -> Edge {
        let n = self.order.len();
        inst.edge(self.order[p], self.order[(p + 1) % n])
    }

    /// All `n` edges in visit order, closing edge last.
    pub fn edges(&self, inst: &Instance) -> Vec<Edge> {
        (0..self.order.len()).map(|p| self.edge_at(inst, p)).collect()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let n = self.order.len();
        (0..n).any(|p| {
            let (x, y) = (self.order[p], self.order[(p + 1) % n]);
            (x == a && y == b) || (x == b && y == a)
        })
    }

    /// Same cycle rotated to start at city 0 and oriented so that the
    /// second city is smaller than the last.
    pub fn canonical(&self) -> Vec<usize> {
        let n = self.order.len();
        let start = self.order.iter().position(|&c| c == 0).unwrap_or(0);
        let mut out: Vec<usize> = (0..n).map(|k| self.order[(start + k) % n]).collect();
        if n > 2 && out[1] > out[n - 1] {
            out[1..].reverse();
        }
        out
    }
}

/// Length of the closed cycle through `order`.
pub fn tour_length(inst: &Instance, order: &[usize]) -> f64 {
    let n = order.len();
    (0..n).map(|p| inst.dist(order[p], order[(p + 1) % n])).sum()
}

/// Length of the Hamiltonian path left after deleting `dropped` from the
/// cycle.
pub fn path_length(inst: &Instance, tour: &Tour, dropped: (usize, usize)) -> Result<f64> {
    let (a, b) = dropped;
    if !tour.contains_edge(a, b) {
        return Err(Error::InvalidArgument(format!(
            "edge ({a},{b}) is not part of the tour"
        )));
    }
    Ok(tour.length() - inst.dist(a, b))
}

/// Nearest-neighbour construction with index tie-break. When `start` is
/// `None` the start city is drawn from `seed`.
pub fn nearest_neighbor_tour(inst: &Instance, start: Option<usize>, seed: u64) -> Result<Tour> {
    let n = inst.n();
    let start = match start {
        Some(s) if s < n => s,
        Some(s) => return Err(Error::InvalidArgument(format!("start city {s} out of range"))),
        None => seeded_rng(seed).gen_range(0..n),
    };
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        let mut next = None;
        for (c, _) in visited.iter().enumerate().filter(|(_, &seen)| !seen) {
            if next.is_none_or(|b| inst.dist(cur, c) < inst.dist(cur, b)) {
                next = Some(c);
            }
        }
        cur = next.expect("unvisited city remains");
        visited[cur] = true;
        order.push(cur);
    }
    Ok(Tour::from_valid(inst, order))
}

/// Uniformly random visit order, drawn from the tour stream of `seed`.
pub fn random_tour(inst: &Instance, seed: u64) -> Tour {
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.shuffle(&mut seeded_rng_stream(seed, TOUR_STREAM));
    Tour::from_valid(inst, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Point;
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

    fn collinear() -> Instance {
        let pts = [0.0, 1.0, 3.0, 7.0].map(|x| Point::new(x, 0.0)).to_vec();
        Instance::euclidean("collinear", pts).unwrap()
    }

    #[test]
    fn lengths() {
        let sq = square();
        assert_eq!(Tour::new(&sq, vec![0, 1, 2, 3]).unwrap().length(), 4.0);

        let col = collinear();
        let t = Tour::new(&col, vec![0, 2, 1, 3]).unwrap();
        assert_eq!(t.length(), 18.0);
        assert_eq!(path_length(&col, &t, (3, 0)).unwrap(), 11.0);
        assert!(path_length(&col, &t, (0, 1)).is_err());

        let two = Instance::euclidean("two", vec![Point::new(0.0, 0.0), Point::new(2.5, 0.0)]).unwrap();
        assert_eq!(Tour::new(&two, vec![0, 1]).unwrap().length(), 5.0);
    }

    #[test]
    fn rejects_non_permutations() {
        let sq = square();
        assert!(Tour::new(&sq, vec![0, 1, 1, 3]).is_err());
        assert!(Tour::new(&sq, vec![0, 1, 2]).is_err());
        assert!(Tour::new(&sq, vec![0, 1, 2, 4]).is_err());
    }

    #[test]
    fn nearest_neighbor_on_square() {
        let t = nearest_neighbor_tour(&square(), Some(0), 7).unwrap();
        assert_eq!(t.order(), &[0, 1, 2, 3]);
        assert_eq!(t.length(), 4.0);
    }

    #[test]
    fn seeded_constructions_are_deterministic() {
        let sq = square();
        assert_eq!(random_tour(&sq, 11), random_tour(&sq, 11));
        assert_eq!(
            nearest_neighbor_tour(&sq, None, 5).unwrap(),
            nearest_neighbor_tour(&sq, None, 5).unwrap()
        );
    }

    #[test]
    fn canonical_rotation() {
        let sq = square();
        let t = Tour::new(&sq, vec![2, 1, 0, 3]).unwrap();
        assert_eq!(t.canonical(), vec![0, 1, 2, 3]);
    }

    proptest! {
        #[test]
        fn random_tours_are_valid(n in 2usize..40, seed in any::<u64>()) {
            let pts = (0..n).map(|i| Point::new(i as f64, (i * i % 7) as f64)).collect();
            let inst = Instance::euclidean("p", pts).unwrap();
            let t = random_tour(&inst, seed);
            prop_assert!(is_permutation(t.order(), n));
            prop_assert!((t.length() - tour_length(&inst, t.order())).abs() < 1e-12);
        }
    }
}
