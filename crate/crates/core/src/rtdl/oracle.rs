//! Per-definition matching, one union-find run per edge. Slower than the
//! cycle-exchange construction in `barcode.rs` but follows the definition
//! of the two maps literally, so it serves as the reference.

use super::barcode::{assemble, check_tour, heaviest_edge_position, Bar, Barcode};
use crate::error::Result;
use crate::graph::{compute_mst, Edge, Instance, Tour, UnionFind};

fn tour_path_sorted(inst: &Instance, tour: &Tour) -> (Vec<Edge>, Edge, usize) {
    let e_max_pos = heaviest_edge_position(inst, tour);
    let mut path: Vec<Edge> = (0..tour.len())
        .filter(|&p| p != e_max_pos)
        .map(|p| tour.edge_at(inst, p))
        .collect();
    path.sort_by_key(Edge::key);
    (path, tour.edge_at(inst, e_max_pos), e_max_pos)
}

/// ψ by definition: for each tour-path edge `t = (a, b)`, seed a union-find
/// with the path edges preceding `t`, then add MST edges in ascending order
/// until `a` and `b` connect. The MST edge that connects them is ψ(t).
pub fn oracle_bijection(inst: &Instance, tour: &Tour) -> Result<Barcode> {
    check_tour(inst, tour)?;
    let n = inst.n();
    let mst = compute_mst(inst)?;
    let (path, e_max, e_max_pos) = tour_path_sorted(inst, tour);

    let mut bars = Vec::with_capacity(n - 1);
    for (k, t) in path.iter().enumerate() {
        let mut uf = UnionFind::new(n);
        for smaller in &path[..k] {
            uf.union(smaller.u, smaller.v);
        }
        let psi = mst
            .edges
            .iter()
            .find(|m| {
                uf.union(m.u, m.v);
                uf.connected(t.u, t.v)
            })
            .expect("the MST alone connects every pair");
        bars.push(Bar {
            mst_edge: *psi,
            tour_edge: *t,
            birth: psi.weight,
            death: t.weight,
        });
    }
    Ok(assemble(
        bars,
        e_max,
        e_max_pos,
        mst.total,
        tour.length() - e_max.weight,
    ))
}

/// φ by definition: for each MST edge `e = (a, b)`, seed a union-find with
/// the MST edges preceding `e`, then add tour-path edges in ascending order
/// until `a` and `b` connect. Returns `(e, φ(e))` in MST order.
pub fn oracle_phi(inst: &Instance, tour: &Tour) -> Result<Vec<(Edge, Edge)>> {
    check_tour(inst, tour)?;
    let n = inst.n();
    let mst = compute_mst(inst)?;
    let (path, _, _) = tour_path_sorted(inst, tour);

    let mut out = Vec::with_capacity(n - 1);
    for (k, e) in mst.edges.iter().enumerate() {
        let mut uf = UnionFind::new(n);
        for smaller in &mst.edges[..k] {
            uf.union(smaller.u, smaller.v);
        }
        let phi = path
            .iter()
            .find(|t| {
                uf.union(t.u, t.v);
                uf.connected(e.u, e.v)
            })
            .expect("the tour path alone connects every pair");
        out.push((*e, *phi));
    }
    Ok(out)
}
