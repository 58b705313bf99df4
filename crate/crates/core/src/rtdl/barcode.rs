use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{compute_mst, Edge, Instance, SpanningTree, Tour};

/// One interval of the barcode: an MST edge paired with a tour-path edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub mst_edge: Edge,
    pub tour_edge: Edge,
    pub birth: f64,
    pub death: f64,
}

impl Bar {
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Barcode {
    /// One bar per MST edge, sorted by the MST edge under the tie rule.
    pub bars: Vec<Bar>,
    pub e_max: Edge,
    /// Tour position whose outgoing edge is `e_max`.
    pub e_max_pos: usize,
    pub mst_total: f64,
    pub path_length: f64,
    /// Sum of bar lengths; equals `path_length - mst_total` up to rounding.
    pub gap: f64,
}

impl Barcode {
    /// Tour-path edge matched to the MST edge `(a, b)` (the map φ).
    pub fn phi(&self, a: usize, b: usize) -> Option<Edge> {
        let probe = Edge::new(a, b, 0.0);
        self.bars
            .iter()
            .find(|bar| bar.mst_edge.same_endpoints(&probe))
            .map(|bar| bar.tour_edge)
    }

    /// MST edge matched to the tour-path edge `(a, b)` (the map ψ).
    pub fn psi(&self, a: usize, b: usize) -> Option<Edge> {
        let probe = Edge::new(a, b, 0.0);
        self.bars
            .iter()
            .find(|bar| bar.tour_edge.same_endpoints(&probe))
            .map(|bar| bar.mst_edge)
    }

    /// Writes the barcode as CSV. `penalty` is the bar length.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["mst_u", "mst_v", "birth", "tour_u", "tour_v", "death", "penalty"])?;
        for bar in &self.bars {
            w.write_record([
                bar.mst_edge.u.to_string(),
                bar.mst_edge.v.to_string(),
                bar.birth.to_string(),
                bar.tour_edge.u.to_string(),
                bar.tour_edge.v.to_string(),
                bar.death.to_string(),
                bar.length().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Position of the tour edge with the largest weight, ties resolved by the
/// global tie rule (largest key wins).
pub fn heaviest_edge_position(inst: &Instance, tour: &Tour) -> usize {
    (0..tour.len())
        .max_by_key(|&p| tour.edge_at(inst, p).key())
        .expect("non-empty tour")
}

pub(crate) fn check_tour(inst: &Instance, tour: &Tour) -> Result<()> {
    if inst.n() < 3 {
        return Err(Error::InvalidInstance(format!(
            "barcode needs at least 3 cities, got {}",
            inst.n()
        )));
    }
    if tour.len() != inst.n() {
        return Err(Error::InvalidTour(format!(
            "tour visits {} cities, instance has {}",
            tour.len(),
            inst.n()
        )));
    }
    Ok(())
}

/// Barcode of `tour` against the complete graph of `inst`.
pub fn compute_barcode(inst: &Instance, tour: &Tour) -> Result<Barcode> {
    check_tour(inst, tour)?;
    let mst = compute_mst(inst)?;
    compute_barcode_with_mst(inst, tour, &mst)
}

/// Same as [`compute_barcode`] with a precomputed MST of `inst`.
///
/// Works by cycle exchange. Start from the forest `F = MST`. Tour-path
/// edges are inserted in ascending order as zero-cost links; each insertion
/// closes a cycle in `F`, and the heaviest MST edge on that cycle is the
/// partner of the inserted edge. That edge leaves `F`, the tour edge stays,
/// so `F` remains a spanning tree throughout.
pub fn compute_barcode_with_mst(inst: &Instance, tour: &Tour, mst: &SpanningTree) -> Result<Barcode> {
    check_tour(inst, tour)?;
    let n = inst.n();
    if mst.edges.len() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "spanning tree has {} edges, expected {}",
            mst.edges.len(),
            n - 1
        )));
    }
    let sorted;
    let mst = if mst.edges.windows(2).all(|w| w[0].key() < w[1].key()) {
        mst
    } else {
        sorted = SpanningTree::from_edges(mst.edges.clone());
        &sorted
    };
    let e_max_pos = heaviest_edge_position(inst, tour);
    let e_max = tour.edge_at(inst, e_max_pos);

    let mut path: Vec<Edge> = (0..n)
        .filter(|&p| p != e_max_pos)
        .map(|p| tour.edge_at(inst, p))
        .collect();
    path.sort_by_key(Edge::key);

    // Forest items: ids < n-1 are MST edges (in ascending key order, so a
    // larger id means a larger key), ids >= n-1 are inserted tour edges.
    let m = mst.edges.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(4); n];
    for (id, e) in mst.edges.iter().enumerate() {
        adj[e.u].push((e.v, id));
        adj[e.v].push((e.u, id));
    }

    let mut partner: Vec<Option<Edge>> = vec![None; m];
    let mut via: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); n];
    let mut stamp = vec![0u32; n];
    let mut queue = Vec::with_capacity(n);
    for (k, te) in path.iter().enumerate() {
        let round = k as u32 + 1;
        // BFS from te.u to te.v through the current forest
        queue.clear();
        queue.push(te.u);
        stamp[te.u] = round;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            if x == te.v {
                break;
            }
            for &(y, id) in &adj[x] {
                if stamp[y] != round {
                    stamp[y] = round;
                    via[y] = (x, id);
                    queue.push(y);
                }
            }
        }
        debug_assert_eq!(stamp[te.v], round, "forest must stay spanning");

        let mut heaviest: Option<usize> = None;
        let mut cur = te.v;
        while cur != te.u {
            let (prev, id) = via[cur];
            if id < m && heaviest.is_none_or(|h| id > h) {
                heaviest = Some(id);
            }
            cur = prev;
        }
        let id =
            heaviest.ok_or_else(|| Error::InvalidTour("tour path contains a cycle; not a Hamiltonian cycle".into()))?;
        partner[id] = Some(*te);

        let dead = mst.edges[id];
        adj[dead.u].retain(|&(_, i)| i != id);
        adj[dead.v].retain(|&(_, i)| i != id);
        let new_id = m + k;
        adj[te.u].push((te.v, new_id));
        adj[te.v].push((te.u, new_id));
    }

    let bars: Vec<Bar> = mst
        .edges
        .iter()
        .zip(partner)
        .map(|(me, te)| {
            let te = te.expect("every MST edge is matched");
            Bar {
                mst_edge: *me,
                tour_edge: te,
                birth: me.weight,
                death: te.weight,
            }
        })
        .collect();
    Ok(assemble(
        bars,
        e_max,
        e_max_pos,
        mst.total,
        tour.length() - e_max.weight,
    ))
}

pub(crate) fn assemble(mut bars: Vec<Bar>, e_max: Edge, e_max_pos: usize, mst_total: f64, path_length: f64) -> Barcode {
    bars.sort_by_key(|b| b.mst_edge.key());
    let gap = bars.iter().map(Bar::length).sum();
    Barcode {
        bars,
        e_max,
        e_max_pos,
        mst_total,
        path_length,
        gap,
    }
}
