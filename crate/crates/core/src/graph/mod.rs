//! Dense complete-graph instances, tours, spanning trees and 1-trees.

mod instance;
mod mst;
mod one_tree;
mod tour;
mod union_find;

pub use instance::{Edge, EdgeKey, Instance, Point, WeightKind};
pub use mst::{compute_mst, kruskal, tree_path_max, SpanningTree};
pub use one_tree::{compute_one_tree, OneTree};
pub use tour::{nearest_neighbor_tour, path_length, random_tour, tour_length, Tour};
pub use union_find::UnionFind;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded generator used everywhere a seed appears in the public API.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream of the seed reserved for drawing starting tours, so an instance
/// and its start can share one seed.
pub const TOUR_STREAM: u64 = 1;

pub fn seeded_rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(stream);
    rng
}
