use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the distances of an [`Instance`] were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightKind {
    #[serde(rename = "EUC_2D")]
    Euc2d,
    #[serde(rename = "CEIL_2D")]
    Ceil2d,
    #[serde(rename = "GEO")]
    Geo,
    #[serde(rename = "ATT")]
    Att,
    #[serde(rename = "EXPLICIT")]
    Explicit,
    #[serde(rename = "SYNTHETIC")]
    Synthetic,
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WeightKind::Euc2d => "EUC_2D",
            WeightKind::Ceil2d => "CEIL_2D",
            WeightKind::Geo => "GEO",
            WeightKind::Att => "ATT",
            WeightKind::Explicit => "EXPLICIT",
            WeightKind::Synthetic => "SYNTHETIC",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Symmetric TSP instance on a complete graph, stored as a dense row-major
/// distance matrix.
///
/// Invariants (checked on construction): `n >= 2`, zero diagonal, exact
/// symmetry, all weights finite and non-negative.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    name: String,
    kind: WeightKind,
    n: usize,
    dist: Vec<f64>,
    coords: Option<Vec<Point>>,
}

impl Instance {
    /// Builds an instance from a flat row-major `n * n` matrix.
    pub fn from_flat(name: impl Into<String>, kind: WeightKind, n: usize, mut dist: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!("need at least 2 cities, got {n}")));
        }
        if dist.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n,
                got: format!("{} entries", dist.len()),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let w = dist[i * n + j];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "weight ({i},{j}) = {w} is not a finite non-negative number"
                    )));
                }
                if i == j && w != 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "diagonal entry ({i},{i}) = {w} must be 0"
                    )));
                }
                if j > i && w != dist[j * n + i] {
                    return Err(Error::InvalidInstance(format!(
                        "matrix not symmetric at ({i},{j}): {w} vs {}",
                        dist[j * n + i]
                    )));
                }
            }
        }
        // -0.0 would otherwise sort before 0.0 under total ordering.
        for w in dist.iter_mut() {
            *w += 0.0;
        }
        Ok(Instance {
            name: name.into(),
            kind,
            n,
            dist,
            coords: None,
        })
    }

    pub fn from_rows(name: impl Into<String>, kind: WeightKind, rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                got: format!("row {i} with {} entries", row.len()),
            });
        }
        Self::from_flat(name, kind, n, rows.concat())
    }

    /// Builds an instance whose distances are produced by `metric` on the
    /// given points. The points are retained as coordinates.
    pub fn from_points_with(
        name: impl Into<String>,
        kind: WeightKind,
        points: Vec<Point>,
        metric: impl Fn(Point, Point) -> f64,
    ) -> Result<Self> {
        let n = points.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let w = metric(points[i], points[j]);
                dist[i * n + j] = w;
                dist[j * n + i] = w;
            }
        }
        let mut inst = Self::from_flat(name, kind, n, dist)?;
        inst.coords = Some(points);
        Ok(inst)
    }

    /// Exact (unrounded) Euclidean distances.
    pub fn euclidean(name: impl Into<String>, points: Vec<Point>) -> Result<Self> {
        Self::from_points_with(name, WeightKind::Synthetic, points, Point::dist)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.dist
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn coords(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn with_coords(mut self, coords: Option<Vec<Point>>) -> Self {
        self.coords = coords;
        self
    }

    /// Edge `(i, j)` with its weight, endpoints normalized so `u < v`.
    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> Edge {
        Edge::new(i, j, self.dist(i, j))
    }

    /// Copy of the instance with every distance multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale factor {c} must be positive")));
        }
        let dist = self.dist.iter().map(|w| w * c).collect();
        Ok(Self::from_flat(self.name.clone(), self.kind, self.n, dist)?.with_coords(self.coords.clone()))
    }

    /// Copy with cities relabeled: new city `k` is old city `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if !super::tour::is_permutation(perm, self.n) {
            return Err(Error::InvalidArgument("relabeling is not a permutation".into()));
        }
        let n = self.n;
        let mut dist = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                dist[a * n + b] = self.dist(perm[a], perm[b]);
            }
        }
        let coords = self.coords.as_ref().map(|c| perm.iter().map(|&k| c[k]).collect());
        Ok(Self::from_flat(self.name.clone(), self.kind, n, dist)?.with_coords(coords))
    }
}

/// Weighted undirected edge with `u < v` (or `u == v` never occurs).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: f64) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, weight }
    }

    #[inline]
    pub fn key(&self) -> EdgeKey {
        EdgeKey {
            weight: self.weight,
            lo: self.u,
            hi: self.v,
        }
    }

    #[inline]
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    #[inline]
    pub fn same_endpoints(&self, other: &Edge) -> bool {
        self.u == other.u && self.v == other.v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Global tie rule: edges are ordered by (weight, min endpoint, max endpoint).
#[derive(Clone, Copy, Debug)]
pub struct EdgeKey {
    pub weight: f64,
    pub lo: usize,
    pub hi: usize,
}

impl PartialEq for EdgeKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for EdgeKey {}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.lo.cmp(&other.lo))
            .then(self.hi.cmp(&other.hi))
    }
}
