use rand::distributions::Open01;
use rand::Rng;

use crate::error::Result;
use crate::graph::{seeded_rng, Instance, Point, WeightKind};

/// `n` cities uniform in the unit square with exact Euclidean distances.
pub fn gen_euclidean(n: usize, seed: u64) -> Result<Instance> {
    let mut rng = seeded_rng(seed);
    let points = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
    Instance::euclidean(format!("euclidean-{n}-{seed}"), points)
}

/// Symmetric weights drawn independently and uniformly from the open
/// interval (0, 1).
pub fn gen_nonmetric(n: usize, seed: u64) -> Result<Instance> {
    let mut rng = seeded_rng(seed);
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w: f64 = rng.sample(Open01);
            dist[i * n + j] = w;
            dist[j * n + i] = w;
        }
    }
    Instance::from_flat(format!("nonmetric-{n}-{seed}"), WeightKind::Synthetic, n, dist)
}
