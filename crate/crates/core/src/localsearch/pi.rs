use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{compute_mst, compute_one_tree, nearest_neighbor_tour, Instance};
use crate::rtdl::heaviest_edge_position;

/// Per-vertex potentials added to both endpoints of every edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiVector {
    pub pi: Vec<f64>,
}

impl PiVector {
    pub fn zeros(n: usize) -> Self {
        PiVector { pi: vec![0.0; n] }
    }

    pub fn sum(&self) -> f64 {
        self.pi.iter().sum()
    }
}

/// Subgradient schedule: step `t_k = t_0 * decay^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiSchedule {
    pub iters: usize,
    /// `None` derives `t_0` from the instance as
    /// `(L_path(nearest neighbour) - L_mst) / 2n`.
    pub initial_step: Option<f64>,
    pub decay: f64,
    pub special: usize,
}

impl Default for PiSchedule {
    fn default() -> Self {
        PiSchedule {
            iters: 100,
            initial_step: None,
            decay: 0.95,
            special: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PiTransform {
    pub pi: PiVector,
    pub instance: Instance,
    /// Every tour satisfies `L'(T) = L(T) + tour_offset`.
    pub tour_offset: f64,
    /// Held-Karp lower bound of the selected potentials.
    pub lower_bound: f64,
}

/// Returns the instance with distances `d_ij + π_i + π_j`, shifted by a
/// common constant if needed to keep every weight non-negative, together
/// with the resulting tour-length offset.
pub fn apply_pi(inst: &Instance, pi: &PiVector) -> Result<(Instance, f64)> {
    let n = inst.n();
    if pi.pi.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: format!("pi vector of length {}", pi.pi.len()),
        });
    }
    if let Some(v) = pi.pi.iter().position(|p| !p.is_finite()) {
        return Err(Error::InvalidArgument(format!("pi[{v}] is not finite")));
    }
    let mut dist = vec![0.0; n * n];
    let mut lowest = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let w = inst.dist(i, j) + pi.pi[i] + pi.pi[j];
            dist[i * n + j] = w;
            lowest = lowest.min(w);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let w = dist[i * n + j] - lowest;
            dist[i * n + j] = w;
            dist[j * n + i] = w;
        }
    }
    let shifted =
        Instance::from_flat(inst.name(), inst.kind(), n, dist)?.with_coords(inst.coords().map(|c| c.to_vec()));
    Ok((shifted, 2.0 * pi.sum() - n as f64 * lowest))
}

/// Subgradient ascent on the 1-tree bound. Of all visited potentials the
/// one whose 1-tree is closest to a tour is kept: smallest maximum degree
/// deviation, then smallest total deviation, then largest bound.
pub fn pi_transform(inst: &Instance, schedule: &PiSchedule) -> Result<PiTransform> {
    let n = inst.n();
    if n < 3 {
        return Err(Error::InvalidInstance(format!("need at least 3 cities, got {n}")));
    }
    if schedule.special >= n {
        return Err(Error::InvalidArgument(format!(
            "special vertex {} out of range",
            schedule.special
        )));
    }
    if !(schedule.decay > 0.0 && schedule.decay.is_finite()) {
        return Err(Error::InvalidArgument("decay must be positive".into()));
    }
    let t0 = match schedule.initial_step {
        Some(t) if t.is_finite() && t >= 0.0 => t,
        Some(t) => return Err(Error::InvalidArgument(format!("invalid initial step {t}"))),
        None => {
            let nn = nearest_neighbor_tour(inst, Some(0), 0)?;
            let e = nn.edge_at(inst, heaviest_edge_position(inst, &nn));
            let mst = compute_mst(inst)?;
            ((nn.length() - e.weight - mst.total) / (2.0 * n as f64)).max(0.0)
        }
    };

    let mut pi = PiVector::zeros(n);
    let mut best: Option<((usize, usize, f64), PiTransform)> = None;
    let mut step = t0;
    for _ in 0..=schedule.iters {
        let (shifted, offset) = apply_pi(inst, &pi)?;
        let tree = compute_one_tree(&shifted, schedule.special, None)?;
        let deg = tree.degrees(n);
        let bound = tree.total - offset;
        let max_dev = deg.iter().map(|&d| d.abs_diff(2)).max().unwrap_or(0);
        let sum_dev = deg.iter().map(|&d| d.abs_diff(2)).sum();
        let score = (max_dev, sum_dev, -bound);
        let better = match &best {
            None => true,
            Some((s, _)) => (score.0, score.1)
                .cmp(&(s.0, s.1))
                .then(score.2.total_cmp(&s.2))
                .is_lt(),
        };
        if better {
            best = Some((
                score,
                PiTransform {
                    pi: pi.clone(),
                    instance: shifted,
                    tour_offset: offset,
                    lower_bound: bound,
                },
            ));
        }
        if max_dev == 0 || step == 0.0 {
            break;
        }
        for (p, &d) in pi.pi.iter_mut().zip(&deg) {
            *p += step * (d as f64 - 2.0);
        }
        step *= schedule.decay;
    }
    Ok(best.map(|(_, t)| t).expect("at least one iterate"))
}
