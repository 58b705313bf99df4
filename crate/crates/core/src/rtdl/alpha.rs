use serde::{Deserialize, Serialize};

use super::symbolic::{rtdl_barcode, Weight};
use crate::error::{Error, Result};
use crate::graph::{compute_one_tree, Edge, Instance};

/// α-nearness of every edge: the increase of the minimal 1-tree length
/// when the edge is forced into the 1-tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaTable {
    pub n: usize,
    pub special: usize,
    pub alpha: Vec<f64>,
}

impl AlphaTable {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.alpha[i * self.n + j]
    }
}

/// α for all pairs in O(n²).
///
/// For `i, j != special` the forced 1-tree swaps `(i, j)` for the heaviest
/// edge on the tree path between them. For edges at `special`, the forced
/// edge replaces the heavier of the two attaching edges.
pub fn alpha_scores(inst: &Instance, special: usize) -> Result<AlphaTable> {
    let n = inst.n();
    let one_tree = compute_one_tree(inst, special, None)?;

    let mut adj: Vec<Vec<(usize, Edge)>> = vec![Vec::new(); n];
    for e in &one_tree.tree.edges {
        adj[e.u].push((e.v, *e));
        adj[e.v].push((e.u, *e));
    }

    let mut alpha = vec![0.0; n * n];
    // heaviest[v]: largest-key edge on the tree path from root to v
    let mut heaviest: Vec<Option<Edge>> = vec![None; n];
    let mut stack = Vec::with_capacity(n);
    for root in (0..n).filter(|&r| r != special) {
        heaviest.iter_mut().for_each(|h| *h = None);
        stack.clear();
        stack.push((root, usize::MAX));
        while let Some((x, parent)) = stack.pop() {
            for &(y, e) in &adj[x] {
                if y == parent {
                    continue;
                }
                heaviest[y] = Some(match heaviest[x] {
                    Some(h) if h.key() > e.key() => h,
                    _ => e,
                });
                stack.push((y, x));
            }
        }
        for j in (0..n).filter(|&j| j != special && j != root) {
            let beta = heaviest[j].expect("tree spans all non-special vertices");
            let w = inst.dist(root, j);
            alpha[root * n + j] = if beta.same_endpoints(&Edge::new(root, j, w)) {
                0.0
            } else {
                w - beta.weight
            };
        }
    }

    let second = one_tree.attach[1];
    for j in (0..n).filter(|&j| j != special) {
        let w = inst.dist(special, j);
        let probe = Edge::new(special, j, w);
        let a = if one_tree.attach.iter().any(|e| e.same_endpoints(&probe)) {
            0.0
        } else {
            w - second.weight
        };
        alpha[special * n + j] = a;
        alpha[j * n + special] = a;
    }

    Ok(AlphaTable { n, special, alpha })
}

/// α(i, j) read off the RTD-Lite barcode of `(G1^{ij}, G1)`, where `G1` is
/// the instance without `special` and `G1^{ij}` keeps only edge `(i, j)`.
/// The value is the length of the bar whose death edge is `(i, j)`.
pub fn alpha_via_rtdl(inst: &Instance, special: usize, i: usize, j: usize) -> Result<f64> {
    let n = inst.n();
    if n < 3 {
        return Err(Error::InvalidInstance("α needs at least 3 cities".into()));
    }
    if special >= n || i >= n || j >= n || i == j {
        return Err(Error::InvalidArgument(format!(
            "invalid pair ({i},{j}) / special {special}"
        )));
    }
    if i == special || j == special {
        return Err(Error::InvalidArgument(format!(
            "edge ({i},{j}) touches the special vertex {special}"
        )));
    }
    // G1 relabeled to 0..n-1 (skipping special)
    let label = |v: usize| v - usize::from(v > special);
    let city = |k: usize| k + usize::from(k >= special);
    let (li, lj) = (label(i).min(label(j)), label(i).max(label(j)));

    let in_g1 = |u: usize, v: usize| Weight::Finite(inst.dist(city(u), city(v)));
    let only_ij = |u: usize, v: usize| {
        if (u, v) == (li, lj) {
            Weight::Finite(inst.dist(i, j))
        } else {
            Weight::Missing
        }
    };
    let bars = rtdl_barcode(n - 1, only_ij, in_g1);
    let bar = bars
        .iter()
        .find(|b| b.a_edge == (li, lj))
        .expect("every MST(A) edge is matched");
    bar.length()
        .ok_or_else(|| Error::InvalidArgument("bar for (i,j) has an infinite end".into()))
}
