use serde::{Deserialize, Serialize};

use super::mst::prim_on;
use super::{tree_path_max, Edge, Instance, SpanningTree};
use crate::error::{Error, Result};

/// Minimal 1-tree: a spanning tree over every vertex except `special`,
/// plus the two edges that attach `special` to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneTree {
    pub tree: SpanningTree,
    pub special: usize,
    pub attach: [Edge; 2],
    pub total: f64,
}

impl OneTree {
    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for e in self.tree.edges.iter().chain(self.attach.iter()) {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let probe = Edge::new(a, b, 0.0);
        self.tree.contains(a, b) || self.attach.iter().any(|e| e.same_endpoints(&probe))
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.tree.edges.iter().chain(self.attach.iter())
    }
}

/// Minimal 1-tree with `special` as the designated vertex, optionally
/// constrained to contain `forced_edge`.
pub fn compute_one_tree(inst: &Instance, special: usize, forced_edge: Option<(usize, usize)>) -> Result<OneTree> {
    let n = inst.n();
    if n < 3 {
        return Err(Error::InvalidInstance(format!(
            "a 1-tree needs at least 3 vertices, got {n}"
        )));
    }
    if special >= n {
        return Err(Error::InvalidArgument(format!("special vertex {special} out of range")));
    }
    if let Some((i, j)) = forced_edge {
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidArgument(format!("invalid forced edge ({i},{j})")));
        }
    }

    let rest: Vec<usize> = (0..n).filter(|&v| v != special).collect();
    let mut tree = prim_on(inst, &rest);

    let mut incident: Vec<Edge> = rest.iter().map(|&v| inst.edge(special, v)).collect();
    incident.sort_by_key(Edge::key);
    let mut attach = [incident[0], incident[1]];

    match forced_edge {
        Some((i, j)) if i != special && j != special => {
            if !tree.contains(i, j) {
                // Exchange: adding (i,j) closes a cycle; drop its heaviest edge.
                let drop = tree_path_max(n, &tree.edges, i, j).expect("tree spans every non-special vertex");
                let mut edges = tree.edges;
                edges.swap_remove(drop);
                edges.push(inst.edge(i, j));
                tree = SpanningTree::from_edges(edges);
            }
        }
        Some((i, j)) => {
            let other = if i == special { j } else { i };
            let forced = inst.edge(special, other);
            if !attach.iter().any(|e| e.same_endpoints(&forced)) {
                attach = [incident[0], forced];
            }
        }
        None => {}
    }
    attach.sort_by_key(Edge::key);

    let total = tree.total + attach[0].weight + attach[1].weight;
    Ok(OneTree {
        tree,
        special,
        attach,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Point;

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
    fn square_one_tree() {
        let t = compute_one_tree(&square(), 0, None).unwrap();
        assert_eq!(t.total, 4.0);
        assert!(t.contains(1, 2) && t.contains(2, 3) && t.contains(0, 1) && t.contains(0, 3));
    }

    #[test]
    fn collinear_one_tree() {
        let t = compute_one_tree(&collinear(), 0, None).unwrap();
        assert_eq!(t.total, 10.0);
        assert!(t.tree.contains(1, 2) && t.tree.contains(2, 3));
        assert_eq!(t.attach.map(|e| e.endpoints()), [(0, 1), (0, 2)]);
        assert_eq!(t.degrees(4), vec![2, 2, 3, 1]);
    }

    #[test]
    fn forcing_an_existing_edge_changes_nothing() {
        let inst = collinear();
        let base = compute_one_tree(&inst, 0, None).unwrap();
        for &(i, j) in &[(1, 2), (2, 3), (0, 1), (0, 2)] {
            let forced = compute_one_tree(&inst, 0, Some((i, j))).unwrap();
            assert_eq!(forced, base);
        }
    }

    #[test]
    fn forced_edges_are_contained() {
        let inst = collinear();
        let base = compute_one_tree(&inst, 0, None).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let t = compute_one_tree(&inst, 0, Some((i, j))).unwrap();
                assert!(t.contains(i, j));
                assert!(t.total >= base.total);
            }
        }
    }

    #[test]
    fn errors() {
        let tri = Instance::euclidean("p", vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).unwrap();
        assert!(compute_one_tree(&tri, 0, None).is_err());
        assert!(compute_one_tree(&square(), 9, None).is_err());
        assert!(compute_one_tree(&square(), 0, Some((2, 2))).is_err());
    }
}
