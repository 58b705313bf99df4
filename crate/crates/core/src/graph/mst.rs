use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeKey, Instance, UnionFind};
use crate::error::{Error, Result};

/// A spanning tree (or forest) given by its edges, sorted ascending by the
/// global tie rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub edges: Vec<Edge>,
    pub total: f64,
}

impl SpanningTree {
    pub(crate) fn from_edges(mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(Edge::key);
        let total = edges.iter().map(|e| e.weight).sum();
        SpanningTree { edges, total }
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let probe = Edge::new(a, b, 0.0);
        self.edges.iter().any(|e| e.same_endpoints(&probe))
    }

    /// True if the edges form a spanning tree on `vertices`.
    pub fn spans(&self, vertices: &[usize], n: usize) -> bool {
        if vertices.is_empty() || self.edges.len() + 1 != vertices.len() {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            if !uf.union(e.u, e.v) {
                return false;
            }
        }
        let root = uf.find(vertices[0]);
        vertices.iter().all(|&v| uf.find(v) == root)
    }
}

/// Minimum spanning tree of the complete graph, dense O(n²) Prim.
///
/// Candidate edges are compared by the full tie key, so the result is the
/// unique minimum under that strict order.
pub fn compute_mst(inst: &Instance) -> Result<SpanningTree> {
    if inst.n() < 2 {
        return Err(Error::InvalidInstance("MST needs at least 2 cities".into()));
    }
    let vertices: Vec<usize> = (0..inst.n()).collect();
    Ok(prim_on(inst, &vertices))
}

/// Prim restricted to the induced subgraph on `vertices` (original labels).
pub(crate) fn prim_on(inst: &Instance, vertices: &[usize]) -> SpanningTree {
    let m = vertices.len();
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    if m < 2 {
        return SpanningTree::from_edges(edges);
    }
    let mut in_tree = vec![false; m];
    // best[k]: cheapest known edge from the tree to vertices[k]
    let mut best: Vec<Option<Edge>> = vec![None; m];
    in_tree[0] = true;
    let root = vertices[0];
    for k in 1..m {
        best[k] = Some(inst.edge(root, vertices[k]));
    }
    for _ in 1..m {
        let mut pick: Option<(usize, EdgeKey)> = None;
        for k in 0..m {
            if in_tree[k] {
                continue;
            }
            let key = best[k].expect("candidate set for every outside vertex").key();
            if pick.is_none_or(|(_, bk)| key < bk) {
                pick = Some((k, key));
            }
        }
        let (k, _) = pick.expect("at least one vertex outside the tree");
        in_tree[k] = true;
        edges.push(best[k].take().unwrap());
        let added = vertices[k];
        for t in 0..m {
            if in_tree[t] {
                continue;
            }
            let cand = inst.edge(added, vertices[t]);
            if best[t].is_none_or(|b| cand.key() < b.key()) {
                best[t] = Some(cand);
            }
        }
    }
    SpanningTree::from_edges(edges)
}

/// Kruskal over an explicit edge list on `n` vertices. Returns a minimum
/// spanning forest (a tree if the edges connect all vertices).
pub fn kruskal(n: usize, edges: &[Edge]) -> SpanningTree {
    let mut sorted = edges.to_vec();
    sorted.sort_by_key(Edge::key);
    let mut uf = UnionFind::new(n);
    let picked = sorted.into_iter().filter(|e| uf.union(e.u, e.v)).collect();
    SpanningTree::from_edges(picked)
}

/// Index (into `edges`) of the largest-key edge on the tree path between
/// `a` and `b`. `None` if `a == b` or they are not connected.
pub fn tree_path_max(n: usize, edges: &[Edge], a: usize, b: usize) -> Option<usize> {
    if a == b {
        return None;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, e) in edges.iter().enumerate() {
        adj[e.u].push((e.v, idx));
        adj[e.v].push((e.u, idx));
    }
    // BFS from a remembering the edge used to reach each vertex
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for &(y, idx) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some(idx);
                queue.push_back(y);
            }
        }
    }
    if !seen[b] {
        return None;
    }
    let mut best: Option<usize> = None;
    let mut cur = b;
    while cur != a {
        let idx = via[cur].expect("path recorded by BFS");
        if best.is_none_or(|bi| edges[idx].key() > edges[bi].key()) {
            best = Some(idx);
        }
        let e = edges[idx];
        cur = if e.u == cur { e.v } else { e.u };
    }
    best
}
