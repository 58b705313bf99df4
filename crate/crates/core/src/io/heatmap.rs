use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Instance, Tour};

const MAGIC: &[u8; 4] = b"HMAP";
const HEADER_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeatmapFormat {
    /// One matrix row per line, comma separated, no header.
    Csv,
    /// `HMAP`, `u32` n, 8 reserved bytes, then `n * n` row-major `f64`,
    /// all little-endian.
    F64LeBin,
}

impl HeatmapFormat {
    /// Guesses from the file extension: `.csv` is CSV, anything else binary.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => HeatmapFormat::Csv,
            _ => HeatmapFormat::F64LeBin,
        }
    }
}

impl FromStr for HeatmapFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(HeatmapFormat::Csv),
            "f64le-bin" | "bin" => Ok(HeatmapFormat::F64LeBin),
            other => Err(Error::InvalidArgument(format!(
                "unknown heatmap format '{other}' (expected csv or f64le-bin)"
            ))),
        }
    }
}

/// Dense `n x n` edge relevance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Heatmap {
    n: usize,
    values: Vec<f64>,
}

impl Heatmap {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n,
                got: format!("{} entries", values.len()),
            });
        }
        for (k, v) in values.iter().enumerate() {
            if !v.is_finite() && k / n != k % n {
                return Err(Error::InvalidArgument(format!(
                    "heatmap entry ({},{}) is {v}",
                    k / n,
                    k % n
                )));
            }
        }
        Ok(Heatmap { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn from_csv(bytes: &[u8]) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(bytes);
        let mut values = Vec::new();
        let mut rows = 0;
        let mut width = None;
        for record in reader.records() {
            let record = record?;
            let line = record.position().map_or(rows + 1, |p| p.line() as usize);
            if record.iter().all(str::is_empty) {
                continue;
            }
            if *width.get_or_insert(record.len()) != record.len() {
                return Err(Error::parse(line, "ragged heatmap row"));
            }
            for field in record.iter() {
                let v: f64 = field
                    .parse()
                    .map_err(|_| Error::parse(line, format!("expected a number, found '{field}'")))?;
                values.push(v);
            }
            rows += 1;
        }
        if width.unwrap_or(0) != rows {
            return Err(Error::ShapeMismatch {
                expected: rows,
                got: format!("{rows} rows of width {}", width.unwrap_or(0)),
            });
        }
        Self::new(rows, values)
    }

    pub fn from_bin(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(Error::InvalidArgument("not an HMAP heatmap".into()));
        }
        let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
        let body = &bytes[HEADER_LEN..];
        if body.len() != n * n * 8 {
            return Err(Error::ShapeMismatch {
                expected: n,
                got: format!("{} payload bytes", body.len()),
            });
        }
        let values = body
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        Self::new(n, values)
    }

    pub fn to_bin(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.values.len() * 8);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        out.extend_from_slice(&[0u8; 8]);
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in self.values.chunks(self.n.max(1)) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

pub fn load_heatmap(path: &Path, format: HeatmapFormat) -> Result<Heatmap> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    match format {
        HeatmapFormat::Csv => Heatmap::from_csv(&bytes),
        HeatmapFormat::F64LeBin => Heatmap::from_bin(&bytes),
    }
}

/// Starts at city 0 and repeatedly moves to the unvisited city with the
/// largest heatmap value from the current one, lowest index on ties.
pub fn greedy_decode(heatmap: &Heatmap, inst: &Instance) -> Result<Tour> {
    let n = inst.n();
    if heatmap.n() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: format!("{0}x{0} heatmap", heatmap.n()),
        });
    }
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = 0;
    visited[0] = true;
    order.push(0);
    for _ in 1..n {
        let mut best: Option<usize> = None;
        for c in (0..n).filter(|&c| !visited[c]) {
            if best.is_none_or(|b| heatmap.get(cur, c) > heatmap.get(cur, b)) {
                best = Some(c);
            }
        }
        cur = best.expect("an unvisited city remains");
        visited[cur] = true;
        order.push(cur);
    }
    Tour::new(inst, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Point;
    use proptest::prelude::*;

    fn line(n: usize) -> Instance {
        Instance::euclidean("line", (0..n).map(|i| Point::new(i as f64, 0.0)).collect()).unwrap()
    }

    fn chain() -> Heatmap {
        let mut v = vec![0.0; 16];
        for (i, j) in [(0, 1), (1, 2), (2, 3)] {
            v[i * 4 + j] = 1.0;
            v[j * 4 + i] = 1.0;
        }
        Heatmap::new(4, v).unwrap()
    }

    #[test]
    fn chain_decodes_in_order() {
        let t = greedy_decode(&chain(), &line(4)).unwrap();
        assert_eq!(t.order(), &[0, 1, 2, 3]);
    }

    #[test]
    fn flat_heatmap_uses_index_order() {
        let hm = Heatmap::new(5, vec![0.5; 25]).unwrap();
        assert_eq!(greedy_decode(&hm, &line(5)).unwrap().order(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn shape_and_nan_errors() {
        assert!(greedy_decode(&chain(), &line(5)).is_err());
        let mut v = vec![0.0; 9];
        v[1] = f64::NAN;
        assert!(Heatmap::new(3, v).is_err());
        assert!(Heatmap::from_csv(b"0,1\n1,0,2\n").is_err());
        assert!(Heatmap::from_csv(b"0,x\n1,0\n").is_err());
    }

    #[test]
    fn formats_round_trip() {
        let hm = Heatmap::new(3, vec![0.0, 0.25, 1e-300, 0.25, 0.0, 7.5, 1e-300, 7.5, 0.0]).unwrap();
        assert_eq!(Heatmap::from_bin(&hm.to_bin()).unwrap(), hm);
        assert_eq!(Heatmap::from_csv(hm.to_csv().as_bytes()).unwrap(), hm);
        assert_eq!(hm.to_bin().len(), 16 + 9 * 8);
        assert!(Heatmap::from_bin(b"HMAQ\x01\0\0\0\0\0\0\0\0\0\0\0\0\0\0\0\0\0\0\0").is_err());
    }

    proptest! {
        #[test]
        fn decode_is_a_tour(n in 2usize..30, vals in proptest::collection::vec(-5.0f64..5.0, 900)) {
            let hm = Heatmap::new(n, vals[..n * n].to_vec()).unwrap();
            let t = greedy_decode(&hm, &line(n)).unwrap();
            prop_assert_eq!(t.len(), n);
        }
    }
}
