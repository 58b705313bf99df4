use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Instance, Point, WeightKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemType {
    Tsp,
    Atsp,
}

/// Layout of an `EDGE_WEIGHT_SECTION`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeWeightFormat {
    FullMatrix,
    UpperRow,
    LowerRow,
    UpperDiagRow,
    LowerDiagRow,
    UpperCol,
    LowerCol,
    UpperDiagCol,
    LowerDiagCol,
}

impl FromStr for EdgeWeightFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "FULL_MATRIX" => EdgeWeightFormat::FullMatrix,
            "UPPER_ROW" => EdgeWeightFormat::UpperRow,
            "LOWER_ROW" => EdgeWeightFormat::LowerRow,
            "UPPER_DIAG_ROW" => EdgeWeightFormat::UpperDiagRow,
            "LOWER_DIAG_ROW" => EdgeWeightFormat::LowerDiagRow,
            "UPPER_COL" => EdgeWeightFormat::UpperCol,
            "LOWER_COL" => EdgeWeightFormat::LowerCol,
            "UPPER_DIAG_COL" => EdgeWeightFormat::UpperDiagCol,
            "LOWER_DIAG_COL" => EdgeWeightFormat::LowerDiagCol,
            other => return Err(format!("unsupported EDGE_WEIGHT_FORMAT '{other}'")),
        })
    }
}

impl EdgeWeightFormat {
    /// Matrix cells `(i, j)` in the order the section lists them. Column
    /// layouts of one triangle list the same cells as row layouts of the
    /// other, which is all that matters for a symmetric matrix.
    fn cells(self, n: usize) -> Vec<(usize, usize)> {
        use EdgeWeightFormat::*;
        let mut cells = Vec::new();
        for i in 0..n {
            let range = match self {
                FullMatrix => 0..n,
                UpperRow | LowerCol => (i + 1)..n,
                LowerRow | UpperCol => 0..i,
                UpperDiagRow | LowerDiagCol => i..n,
                LowerDiagRow | UpperDiagCol => 0..(i + 1),
            };
            cells.extend(range.map(|j| (i, j)));
        }
        cells
    }
}

/// Contents of a TSPLIB `TSP` or `ATSP` file.
#[derive(Clone, Debug, PartialEq)]
pub struct TsplibFile {
    pub name: String,
    pub comment: Option<String>,
    pub problem_type: ProblemType,
    pub dimension: usize,
    pub edge_weight_type: WeightKind,
    pub edge_weight_format: Option<EdgeWeightFormat>,
    pub coords: Option<Vec<Point>>,
    /// Raw `EDGE_WEIGHT_SECTION` values in file order.
    pub weights: Option<Vec<f64>>,
}

fn nint(x: f64) -> f64 {
    (x + 0.5).floor()
}

pub fn euc_2d(a: Point, b: Point) -> f64 {
    nint(a.dist(b))
}

pub fn ceil_2d(a: Point, b: Point) -> f64 {
    a.dist(b).ceil()
}

/// Pseudo-Euclidean distance.
pub fn att(a: Point, b: Point) -> f64 {
    let (dx, dy) = (a.x - b.x, a.y - b.y);
    let r = ((dx * dx + dy * dy) / 10.0).sqrt();
    let t = nint(r);
    if t < r {
        t + 1.0
    } else {
        t
    }
}

#[allow(clippy::approx_constant)]
const GEO_PI: f64 = 3.141592;
const EARTH_RADIUS: f64 = 6378.388;

fn geo_radians(c: f64) -> f64 {
    let deg = c.trunc();
    let min = c - deg;
    GEO_PI * (deg + 5.0 * min / 3.0) / 180.0
}

/// Great-circle distance on `DDD.MM` latitude/longitude pairs. Coincident
/// points are at distance 0.
pub fn geo(a: Point, b: Point) -> f64 {
    if a == b {
        return 0.0;
    }
    let (lat_a, lon_a) = (geo_radians(a.x), geo_radians(a.y));
    let (lat_b, lon_b) = (geo_radians(b.x), geo_radians(b.y));
    let q1 = (lon_a - lon_b).cos();
    let q2 = (lat_a - lat_b).cos();
    let q3 = (lat_a + lat_b).cos();
    let c = (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).clamp(-1.0, 1.0);
    (EARTH_RADIUS * c.acos() + 1.0).trunc()
}

fn metric_for(kind: WeightKind) -> Option<fn(Point, Point) -> f64> {
    match kind {
        WeightKind::Euc2d => Some(euc_2d),
        WeightKind::Ceil2d => Some(ceil_2d),
        WeightKind::Att => Some(att),
        WeightKind::Geo => Some(geo),
        WeightKind::Explicit | WeightKind::Synthetic => None,
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank line with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (idx, line) in self.inner.by_ref() {
            self.last = idx + 1;
            let line = line.trim();
            if !line.is_empty() {
                return Some((idx + 1, line));
            }
        }
        None
    }
}

fn number(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a number, found '{tok}'")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite number '{tok}'")));
    }
    Ok(v)
}

fn split_keyword(line: &str) -> (String, &str) {
    let (key, value) = match line.find(':') {
        Some(p) => (&line[..p], &line[p + 1..]),
        None => match line.find(char::is_whitespace) {
            Some(p) => (&line[..p], &line[p..]),
            None => (line, ""),
        },
    };
    (key.trim().to_ascii_uppercase(), value.trim())
}

impl TsplibFile {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| {
            let line = 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count();
            Error::parse(line, "input is not valid UTF-8")
        })?;
        let mut lines = Lines {
            inner: text.lines().enumerate(),
            last: 0,
        };

        let mut name = None;
        let mut comment: Option<String> = None;
        let mut problem_type = None;
        let mut dimension: Option<usize> = None;
        let mut weight_type = None;
        let mut weight_format = None;
        let mut coords = None;
        let mut weights = None;

        let need_dim = |dimension: Option<usize>, line: usize| {
            dimension.ok_or_else(|| Error::parse(line, "section appears before DIMENSION"))
        };

        while let Some((ln, line)) = lines.next_content() {
            let (key, value) = split_keyword(line);
            match key.as_str() {
                "NAME" => name = Some(value.to_string()),
                "COMMENT" => {
                    let c = comment.get_or_insert_with(String::new);
                    if !c.is_empty() {
                        c.push('\n');
                    }
                    c.push_str(value);
                }
                "TYPE" => {
                    problem_type = Some(match value.to_ascii_uppercase().as_str() {
                        "TSP" => ProblemType::Tsp,
                        "ATSP" => ProblemType::Atsp,
                        other => return Err(Error::parse(ln, format!("unsupported TYPE '{other}'"))),
                    })
                }
                "DIMENSION" => {
                    let d: usize = value
                        .parse()
                        .map_err(|_| Error::parse(ln, format!("invalid DIMENSION '{value}'")))?;
                    dimension = Some(d);
                }
                "EDGE_WEIGHT_TYPE" => {
                    weight_type = Some(match value.to_ascii_uppercase().as_str() {
                        "EUC_2D" => WeightKind::Euc2d,
                        "CEIL_2D" => WeightKind::Ceil2d,
                        "GEO" => WeightKind::Geo,
                        "ATT" => WeightKind::Att,
                        "EXPLICIT" => WeightKind::Explicit,
                        other => return Err(Error::parse(ln, format!("unsupported EDGE_WEIGHT_TYPE '{other}'"))),
                    })
                }
                "EDGE_WEIGHT_FORMAT" => {
                    if value.eq_ignore_ascii_case("FUNCTION") {
                        continue;
                    }
                    weight_format = Some(value.parse::<EdgeWeightFormat>().map_err(|m| Error::parse(ln, m))?)
                }
                "NODE_COORD_TYPE" => match value.to_ascii_uppercase().as_str() {
                    "TWOD_COORDS" | "NO_COORDS" => {}
                    other => return Err(Error::parse(ln, format!("unsupported NODE_COORD_TYPE '{other}'"))),
                },
                "DISPLAY_DATA_TYPE" => {}
                "NODE_COORD_SECTION" => {
                    let n = need_dim(dimension, ln)?;
                    coords = Some(read_coords(&mut lines, n)?);
                }
                "DISPLAY_DATA_SECTION" => {
                    let n = need_dim(dimension, ln)?;
                    read_coords(&mut lines, n)?;
                }
                "EDGE_WEIGHT_SECTION" => {
                    let n = need_dim(dimension, ln)?;
                    let format = weight_format
                        .ok_or_else(|| Error::parse(ln, "EDGE_WEIGHT_SECTION without EDGE_WEIGHT_FORMAT"))?;
                    weights = Some(read_numbers(&mut lines, format.cells(n).len(), ln)?);
                }
                "FIXED_EDGES_SECTION" | "TOUR_SECTION" => skip_until_terminator(&mut lines)?,
                "EOF" => break,
                _ => return Err(Error::parse(ln, format!("unknown keyword '{key}'"))),
            }
        }

        let end = lines.last.max(1);
        let dimension = dimension.ok_or_else(|| Error::parse(end, "missing DIMENSION"))?;
        let edge_weight_type = weight_type.ok_or_else(|| Error::parse(end, "missing EDGE_WEIGHT_TYPE"))?;
        if edge_weight_type == WeightKind::Explicit && weights.is_none() {
            return Err(Error::parse(end, "EXPLICIT weights without EDGE_WEIGHT_SECTION"));
        }
        if edge_weight_type != WeightKind::Explicit && coords.is_none() {
            return Err(Error::parse(end, "missing NODE_COORD_SECTION"));
        }
        Ok(TsplibFile {
            name: name.unwrap_or_default(),
            comment,
            problem_type: problem_type.unwrap_or(ProblemType::Tsp),
            dimension,
            edge_weight_type,
            edge_weight_format: weight_format,
            coords,
            weights,
        })
    }

    /// Dense row-major `dimension x dimension` matrix. The diagonal is set
    /// to 0 whatever the file says.
    pub fn full_matrix(&self) -> Result<Vec<f64>> {
        let n = self.dimension;
        let mut m = vec![0.0; n * n];
        if let Some(metric) = metric_for(self.edge_weight_type) {
            let pts = self.coords.as_ref().expect("checked on parse");
            for i in 0..n {
                for j in (i + 1)..n {
                    let w = metric(pts[i], pts[j]);
                    m[i * n + j] = w;
                    m[j * n + i] = w;
                }
            }
            return Ok(m);
        }
        let weights = self.weights.as_ref().expect("checked on parse");
        let format = self.edge_weight_format.expect("checked on parse");
        let full = format == EdgeWeightFormat::FullMatrix;
        for (&(i, j), &w) in format.cells(n).iter().zip(weights) {
            if i != j {
                m[i * n + j] = w;
                if !full {
                    m[j * n + i] = w;
                }
            }
        }
        Ok(m)
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.problem_type == ProblemType::Atsp {
            return Err(Error::InvalidInstance(
                "ATSP instance; reduce it with atsp_to_tsp first".into(),
            ));
        }
        let inst = Instance::from_flat(
            self.name.clone(),
            self.edge_weight_type,
            self.dimension,
            self.full_matrix()?,
        )?;
        Ok(inst.with_coords(self.coords.clone()))
    }

    /// Describes `inst` as a TSPLIB file: by coordinates when its weights
    /// come from a TSPLIB metric, otherwise as an explicit full matrix.
    pub fn from_instance(inst: &Instance) -> Self {
        let coords = inst.coords().filter(|_| metric_for(inst.kind()).is_some());
        let (edge_weight_type, edge_weight_format, weights) = match coords {
            Some(_) => (inst.kind(), None, None),
            None => (
                WeightKind::Explicit,
                Some(EdgeWeightFormat::FullMatrix),
                Some(inst.matrix().to_vec()),
            ),
        };
        TsplibFile {
            name: inst.name().to_string(),
            comment: None,
            problem_type: ProblemType::Tsp,
            dimension: inst.n(),
            edge_weight_type,
            edge_weight_format,
            coords: coords.map(|c| c.to_vec()),
            weights,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "NAME : {}", self.name);
        if let Some(c) = &self.comment {
            for line in c.lines() {
                let _ = writeln!(s, "COMMENT : {line}");
            }
        }
        let ty = match self.problem_type {
            ProblemType::Tsp => "TSP",
            ProblemType::Atsp => "ATSP",
        };
        let _ = writeln!(s, "TYPE : {ty}");
        let _ = writeln!(s, "DIMENSION : {}", self.dimension);
        let _ = writeln!(s, "EDGE_WEIGHT_TYPE : {}", self.edge_weight_type);
        if let Some(coords) = &self.coords {
            s.push_str("NODE_COORD_SECTION\n");
            for (i, p) in coords.iter().enumerate() {
                let _ = writeln!(s, "{} {} {}", i + 1, p.x, p.y);
            }
        }
        if let (Some(format), Some(weights)) = (self.edge_weight_format, &self.weights) {
            let _ = writeln!(s, "EDGE_WEIGHT_FORMAT : {}", format_name(format));
            s.push_str("EDGE_WEIGHT_SECTION\n");
            let n = self.dimension;
            let mut row = usize::MAX;
            let mut first = true;
            for (&(i, _), w) in format.cells(n).iter().zip(weights) {
                if i != row {
                    if row != usize::MAX {
                        s.push('\n');
                    }
                    row = i;
                    first = true;
                }
                if !first {
                    s.push(' ');
                }
                let _ = write!(s, "{w}");
                first = false;
            }
            s.push('\n');
        }
        s.push_str("EOF\n");
        s
    }
}

fn format_name(f: EdgeWeightFormat) -> &'static str {
    use EdgeWeightFormat::*;
    match f {
        FullMatrix => "FULL_MATRIX",
        UpperRow => "UPPER_ROW",
        LowerRow => "LOWER_ROW",
        UpperDiagRow => "UPPER_DIAG_ROW",
        LowerDiagRow => "LOWER_DIAG_ROW",
        UpperCol => "UPPER_COL",
        LowerCol => "LOWER_COL",
        UpperDiagCol => "UPPER_DIAG_COL",
        LowerDiagCol => "LOWER_DIAG_COL",
    }
}

fn read_coords(lines: &mut Lines<'_>, n: usize) -> Result<Vec<Point>> {
    let mut pts: Vec<Option<Point>> = vec![None; n];
    for _ in 0..n {
        let (ln, line) = lines
            .next_content()
            .ok_or_else(|| Error::parse(lines.last, format!("expected {n} coordinate lines")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::parse(ln, format!("expected 'id x y', found '{line}'")));
        }
        let id: usize = toks[0]
            .parse()
            .map_err(|_| Error::parse(ln, format!("invalid node id '{}'", toks[0])))?;
        if id == 0 || id > n {
            return Err(Error::parse(ln, format!("node id {id} outside 1..={n}")));
        }
        if pts[id - 1].is_some() {
            return Err(Error::parse(ln, format!("duplicate node id {id}")));
        }
        pts[id - 1] = Some(Point::new(number(toks[1], ln)?, number(toks[2], ln)?));
    }
    Ok(pts.into_iter().map(|p| p.expect("all ids seen")).collect())
}

fn read_numbers(lines: &mut Lines<'_>, count: usize, section_line: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (ln, line) = lines.next_content().ok_or_else(|| {
            Error::parse(
                lines.last.max(section_line),
                format!("EDGE_WEIGHT_SECTION ended after {} of {count} values", out.len()),
            )
        })?;
        for tok in line.split_whitespace() {
            if out.len() == count {
                return Err(Error::parse(
                    ln,
                    format!("more than {count} values in EDGE_WEIGHT_SECTION"),
                ));
            }
            out.push(number(tok, ln)?);
        }
    }
    Ok(out)
}

fn skip_until_terminator(lines: &mut Lines<'_>) -> Result<()> {
    while let Some((_, line)) = lines.next_content() {
        if line.split_whitespace().any(|t| t == "-1") {
            return Ok(());
        }
    }
    Err(Error::parse(lines.last, "section not terminated by -1"))
}

/// Parses a symmetric TSPLIB file into an [`Instance`].
pub fn parse_tsplib(bytes: &[u8]) -> Result<Instance> {
    TsplibFile::parse(bytes)?.to_instance()
}

/// TSPLIB text for `inst`; see [`TsplibFile::from_instance`].
pub fn write_tsplib(inst: &Instance) -> String {
    TsplibFile::from_instance(inst).to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords_file(kind: &str, pts: &[(f64, f64)]) -> String {
        let mut s = format!(
            "NAME : t\nTYPE : TSP\nDIMENSION : {}\nEDGE_WEIGHT_TYPE : {kind}\nNODE_COORD_SECTION\n",
            pts.len()
        );
        for (i, (x, y)) in pts.iter().enumerate() {
            s.push_str(&format!("{} {x} {y}\n", i + 1));
        }
        s.push_str("EOF\n");
        s
    }

    #[test]
    fn unit_formulas() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(3.0, 4.0);
        assert_eq!(euc_2d(a, b), 5.0);
        assert_eq!(att(a, b), 2.0);
        assert_eq!(ceil_2d(a, Point::new(1.0, 1.0)), 2.0);
        assert_eq!(euc_2d(a, Point::new(1.0, 1.0)), 1.0);
        assert_eq!(geo(Point::new(38.24, 20.42), Point::new(38.24, 20.42)), 0.0);
        // ulysses16 cities 1 and 2
        assert_eq!(geo(Point::new(38.24, 20.42), Point::new(39.57, 26.15)), 509.0);
    }

    #[test]
    fn parses_coordinates() {
        let text = coords_file("EUC_2D", &[(0.0, 0.0), (3.0, 4.0), (6.0, 8.0)]);
        let inst = parse_tsplib(text.as_bytes()).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.dist(0, 1), 5.0);
        assert_eq!(inst.dist(0, 2), 10.0);
        assert_eq!(inst.kind(), WeightKind::Euc2d);
    }

    #[test]
    fn keywords_are_case_insensitive_and_colon_optional() {
        let text = "name: x\ntype TSP\ndimension : 3\nedge_weight_type: explicit\nEDGE_WEIGHT_FORMAT: upper_row\nEDGE_WEIGHT_SECTION\n1 2\n3\n";
        let inst = parse_tsplib(text.as_bytes()).unwrap();
        assert_eq!(inst.dist(0, 1), 1.0);
        assert_eq!(inst.dist(0, 2), 2.0);
        assert_eq!(inst.dist(1, 2), 3.0);
    }

    #[test]
    fn explicit_layouts_agree() {
        let full = [0, 1, 2, 3, 1, 0, 4, 5, 2, 4, 0, 6, 3, 5, 6, 0];
        let layouts: [(&str, Vec<i32>); 5] = [
            ("FULL_MATRIX", full.to_vec()),
            ("UPPER_ROW", vec![1, 2, 3, 4, 5, 6]),
            ("LOWER_ROW", vec![1, 2, 4, 3, 5, 6]),
            ("UPPER_DIAG_ROW", vec![0, 1, 2, 3, 0, 4, 5, 0, 6, 0]),
            ("LOWER_DIAG_ROW", vec![0, 1, 0, 2, 4, 0, 3, 5, 6, 0]),
        ];
        for (name, vals) in layouts {
            let body: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            let text = format!(
                "NAME: m\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: {name}\nEDGE_WEIGHT_SECTION\n{}\nEOF\n",
                body.join(" ")
            );
            let inst = parse_tsplib(text.as_bytes()).unwrap();
            let got: Vec<i32> = inst.matrix().iter().map(|&w| w as i32).collect();
            assert_eq!(got, full, "{name}");
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "NAME: x\nTYPE: TSP\nBOGUS: 1\n";
        match parse_tsplib(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let short = "NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n";
        match parse_tsplib(short.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
        let long = "NAME: x\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n3 2 2\nEOF\n";
        match parse_tsplib(long.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
        let extra = "NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\nEDGE_WEIGHT_SECTION\n1 2 3 4\n";
        match parse_tsplib(extra.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn atsp_is_parsed_but_not_an_instance() {
        let text = "NAME: a\nTYPE: ATSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n9999 1 10\n10 9999 1\n1 10 9999\nEOF\n";
        let file = TsplibFile::parse(text.as_bytes()).unwrap();
        assert_eq!(file.problem_type, ProblemType::Atsp);
        assert_eq!(
            file.full_matrix().unwrap(),
            vec![0.0, 1.0, 10.0, 10.0, 0.0, 1.0, 1.0, 10.0, 0.0]
        );
        assert!(file.to_instance().is_err());
    }

    #[test]
    fn display_and_tour_sections_are_skipped() {
        let text = "NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\nDISPLAY_DATA_TYPE: TWOD_DISPLAY\nEDGE_WEIGHT_SECTION\n1 2 3\nDISPLAY_DATA_SECTION\n1 0 0\n2 1 0\n3 0 1\nTOUR_SECTION\n1 2 3\n-1\nEOF\n";
        assert_eq!(parse_tsplib(text.as_bytes()).unwrap().n(), 3);
    }

    #[test]
    fn text_round_trip() {
        let pts = [(1.5, 2.25), (0.1, 7.0), (3.0, 4.0), (10.0, 0.0)];
        let inst = parse_tsplib(coords_file("EUC_2D", &pts).as_bytes()).unwrap();
        assert_eq!(parse_tsplib(write_tsplib(&inst).as_bytes()).unwrap(), inst);
        let m = Instance::euclidean("m", pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap();
        let back = parse_tsplib(write_tsplib(&m).as_bytes()).unwrap();
        assert_eq!(back.matrix(), m.matrix());
    }
}
