use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::barcode::{compute_barcode_with_mst, Barcode};
use crate::error::{Error, Result};
use crate::graph::{compute_mst, Edge, Instance, SpanningTree, Tour};

/// Non-negative penalty for every one of the `n` tour edges, in visit order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenaltyMap {
    /// `(edge, penalty)` for tour position `p` at index `p`.
    pub entries: Vec<(Edge, f64)>,
    pub e_max_pos: usize,
}

impl PenaltyMap {
    /// Penalties from a barcode: bar length for path edges; for `e_max`, the
    /// smallest strictly positive path penalty, or 0 if there is none.
    pub fn from_barcode(inst: &Instance, tour: &Tour, barcode: &Barcode) -> Self {
        let by_edge: HashMap<(usize, usize), f64> = barcode
            .bars
            .iter()
            .map(|b| (b.tour_edge.endpoints(), b.length()))
            .collect();
        let e_max_value = barcode
            .bars
            .iter()
            .map(|b| b.length())
            .filter(|&p| p > 0.0)
            .min_by(f64::total_cmp)
            .unwrap_or(0.0);
        let entries = (0..tour.len())
            .map(|p| {
                let e = tour.edge_at(inst, p);
                let pen = if p == barcode.e_max_pos {
                    e_max_value
                } else {
                    by_edge[&e.endpoints()]
                };
                (e, pen)
            })
            .collect();
        PenaltyMap {
            entries,
            e_max_pos: barcode.e_max_pos,
        }
    }

    pub fn at(&self, pos: usize) -> f64 {
        self.entries[pos].1
    }

    pub fn get(&self, a: usize, b: usize) -> Option<f64> {
        let probe = Edge::new(a, b, 0.0);
        self.entries
            .iter()
            .find(|(e, _)| e.same_endpoints(&probe))
            .map(|&(_, p)| p)
    }

    pub fn e_max(&self) -> Edge {
        self.entries[self.e_max_pos].0
    }

    /// Sum over all edges except `e_max`.
    pub fn path_sum(&self) -> f64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != self.e_max_pos)
            .map(|(_, &(_, pen))| pen)
            .sum()
    }

    pub fn to_lookup(&self) -> HashMap<(usize, usize), f64> {
        self.entries.iter().map(|(e, p)| (e.endpoints(), *p)).collect()
    }
}

pub fn edge_penalties(inst: &Instance, tour: &Tour) -> Result<PenaltyMap> {
    let mst = compute_mst(inst)?;
    penalties_with_mst(inst, tour, &mst)
}

pub fn penalties_with_mst(inst: &Instance, tour: &Tour, mst: &SpanningTree) -> Result<PenaltyMap> {
    let bc = compute_barcode_with_mst(inst, tour, mst)?;
    Ok(PenaltyMap::from_barcode(inst, tour, &bc))
}

/// Per-step topological reward for a completed tour, in the order the
/// edges were chosen: entry `k` is the edge from `order[k]` to
/// `order[k + 1]` (the last entry closes the cycle).
pub fn reward_shaping(inst: &Instance, order: &[usize]) -> Result<Vec<(Edge, f64)>> {
    if order.len() != inst.n() {
        return Err(Error::InvalidTour(format!(
            "incomplete tour: {} of {} cities visited",
            order.len(),
            inst.n()
        )));
    }
    let tour = Tour::new(inst, order.to_vec())?;
    Ok(edge_penalties(inst, &tour)?.entries)
}
