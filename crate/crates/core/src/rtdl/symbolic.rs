//! RTD-Lite barcode between two weighted graphs on a shared vertex set,
//! where an absent edge has weight +∞. Infinity is kept symbolic.

use std::cmp::Ordering;

use crate::graph::UnionFind;

/// Edge weight that may be missing (+∞).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    Finite(f64),
    Missing,
}

impl Weight {
    pub fn finite(self) -> Option<f64> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Missing => None,
        }
    }

    fn min(self, other: Weight) -> Weight {
        if self.cmp_total(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    fn cmp_total(&self, other: &Weight) -> Ordering {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.total_cmp(b),
            (Weight::Finite(_), Weight::Missing) => Ordering::Less,
            (Weight::Missing, Weight::Finite(_)) => Ordering::Greater,
            (Weight::Missing, Weight::Missing) => Ordering::Equal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolicBar {
    /// Edge of MST(C), `C = min(A, B)`; its weight is the birth.
    pub c_edge: (usize, usize),
    pub birth: Weight,
    /// Edge of MST(A) whose insertion joins the two clusters `c_edge` merges.
    pub a_edge: (usize, usize),
    pub death: Weight,
}

impl SymbolicBar {
    /// `death - birth` when both ends are finite.
    pub fn length(&self) -> Option<f64> {
        Some(self.death.finite()? - self.birth.finite()?)
    }
}

fn sorted_edges(m: usize, weight: &impl Fn(usize, usize) -> Weight) -> Vec<(Weight, usize, usize)> {
    let mut edges: Vec<(Weight, usize, usize)> = (0..m)
        .flat_map(|u| ((u + 1)..m).map(move |v| (u, v)))
        .map(|(u, v)| (weight(u, v), u, v))
        .collect();
    edges.sort_by(|a, b| a.0.cmp_total(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    edges
}

fn kruskal(m: usize, sorted: Vec<(Weight, usize, usize)>) -> Vec<(Weight, usize, usize)> {
    let mut uf = UnionFind::new(m);
    sorted.into_iter().filter(|&(_, u, v)| uf.union(u, v)).collect()
}

/// RTD-Lite barcode of `(A, B)` on `m` vertices. `weight_a(u, v)` and
/// `weight_b(u, v)` are queried with `u < v`.
///
/// Builds `C` with `w_C = min(w_A, w_B)` and runs Kruskal on it. Each MST(C)
/// edge `e` merges two clusters; MST(A) edges are then added in ascending
/// order on top of the clusters present just before `e`, and the one that
/// first links the two clusters is paired with `e`.
pub fn rtdl_barcode(
    m: usize,
    weight_a: impl Fn(usize, usize) -> Weight,
    weight_b: impl Fn(usize, usize) -> Weight,
) -> Vec<SymbolicBar> {
    let weight_c = |u, v| weight_a(u, v).min(weight_b(u, v));
    let mst_c = kruskal(m, sorted_edges(m, &weight_c));
    let mst_a = kruskal(m, sorted_edges(m, &weight_a));

    let mut bars = Vec::with_capacity(mst_c.len());
    for (k, &(birth, cu, cv)) in mst_c.iter().enumerate() {
        let mut uf = UnionFind::new(m);
        for &(_, u, v) in &mst_c[..k] {
            uf.union(u, v);
        }
        let &(death, au, av) = mst_a
            .iter()
            .find(|&&(_, u, v)| {
                uf.union(u, v);
                uf.connected(cu, cv)
            })
            .expect("MST(A) spans all vertices");
        bars.push(SymbolicBar {
            c_edge: (cu, cv),
            birth,
            a_edge: (au, av),
            death,
        });
    }
    bars
}
