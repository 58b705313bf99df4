//! Edge orderings. Each ordering is a permutation of tour positions;
//! position `p` stands for the edge `(order[p], order[p + 1])`.

use std::collections::HashMap;

use crate::error::Result;
use crate::graph::{compute_mst, Edge, Instance, SpanningTree, Tour};
use crate::rtdl::{penalties_with_mst, AlphaTable};

fn edge_at(inst: &Instance, order: &[usize], p: usize) -> Edge {
    inst.edge(order[p], order[(p + 1) % order.len()])
}

/// Sorts positions by `score` descending; equal scores fall back to the
/// global tie rule on the edge itself.
fn sort_by_score_desc(inst: &Instance, order: &[usize], positions: &mut [usize], score: impl Fn(usize, &Edge) -> f64) {
    let mut keyed: Vec<(f64, Edge, usize)> = positions
        .iter()
        .map(|&p| {
            let e = edge_at(inst, order, p);
            (score(p, &e), e, p)
        })
        .collect();
    keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.key().cmp(&b.1.key())));
    for (slot, (_, _, p)) in positions.iter_mut().zip(keyed) {
        *slot = p;
    }
}

pub fn sequential(tour: &Tour) -> Vec<usize> {
    (0..tour.len()).collect()
}

pub fn dist_desc(inst: &Instance, tour: &Tour) -> Vec<usize> {
    let mut positions = sequential(tour);
    sort_by_score_desc(inst, tour.order(), &mut positions, |_, e| e.weight);
    positions
}

pub fn penalty_desc(inst: &Instance, tour: &Tour) -> Result<Vec<usize>> {
    let mst = compute_mst(inst)?;
    let pm = penalties_with_mst(inst, tour, &mst)?;
    let mut positions = sequential(tour);
    sort_by_score_desc(inst, tour.order(), &mut positions, |p, _| pm.at(p));
    Ok(positions)
}

pub fn alpha_desc(table: &AlphaTable, inst: &Instance, tour: &Tour) -> Vec<usize> {
    let mut positions = sequential(tour);
    sort_by_score_desc(inst, tour.order(), &mut positions, |_, e| table.get(e.u, e.v));
    positions
}

/// Probing order used inside the search loops.
pub(crate) trait Ranker {
    /// Reorders `positions` for the tour `order` after `iteration`
    /// accepted moves.
    fn rank(&mut self, inst: &Instance, order: &[usize], iteration: usize, positions: &mut [usize]) -> Result<()>;
}

pub(crate) struct Sequential;

impl Ranker for Sequential {
    fn rank(&mut self, _: &Instance, _: &[usize], _: usize, positions: &mut [usize]) -> Result<()> {
        positions.sort_unstable();
        Ok(())
    }
}

pub(crate) struct ByDistance;

impl Ranker for ByDistance {
    fn rank(&mut self, inst: &Instance, order: &[usize], _: usize, positions: &mut [usize]) -> Result<()> {
        sort_by_score_desc(inst, order, positions, |_, e| e.weight);
        Ok(())
    }
}

pub(crate) struct ByAlpha(pub AlphaTable);

impl Ranker for ByAlpha {
    fn rank(&mut self, inst: &Instance, order: &[usize], _: usize, positions: &mut [usize]) -> Result<()> {
        sort_by_score_desc(inst, order, positions, |_, e| self.0.get(e.u, e.v));
        Ok(())
    }
}

/// Barcode penalties, recomputed every `freq` accepted moves. Between
/// refreshes, edges created by recent moves have no penalty yet and rank
/// as 0.
pub(crate) struct ByPenalty {
    mst: SpanningTree,
    freq: usize,
    lookup: HashMap<(usize, usize), f64>,
    refreshed_at: Option<usize>,
}

impl ByPenalty {
    pub(crate) fn new(inst: &Instance, freq: usize) -> Result<Self> {
        Ok(ByPenalty {
            mst: compute_mst(inst)?,
            freq,
            lookup: HashMap::new(),
            refreshed_at: None,
        })
    }
}

impl Ranker for ByPenalty {
    fn rank(&mut self, inst: &Instance, order: &[usize], iteration: usize, positions: &mut [usize]) -> Result<()> {
        let stale = self
            .refreshed_at
            .is_none_or(|at| iteration.saturating_sub(at) >= self.freq);
        if stale {
            let tour = Tour::from_valid(inst, order.to_vec());
            self.lookup = penalties_with_mst(inst, &tour, &self.mst)?.to_lookup();
            self.refreshed_at = Some(iteration);
        }
        let lookup = &self.lookup;
        sort_by_score_desc(inst, order, positions, |_, e| {
            lookup.get(&e.endpoints()).copied().unwrap_or(0.0)
        });
        Ok(())
    }
}
