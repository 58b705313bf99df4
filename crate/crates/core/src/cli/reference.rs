use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

use crate::exact::{held_karp, HELD_KARP_MAX};
use crate::graph::Instance;

const BUNDLED: &str = include_str!("../../data/best_known.txt");

/// Table of best-known tour lengths keyed by instance name.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BestKnown(HashMap<String, f64>);

impl BestKnown {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled table is well formed")
    }

    /// `name length` per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let (Some(name), Some(len), None) = (toks.next(), toks.next(), toks.next()) else {
                bail!("line {}: expected 'name length'", k + 1);
            };
            let len: f64 = len
                .parse()
                .with_context(|| format!("line {}: invalid length '{len}'", k + 1))?;
            if !(len > 0.0 && len.is_finite()) {
                bail!("line {}: length must be positive", k + 1);
            }
            map.insert(name.to_string(), len);
        }
        Ok(BestKnown(map))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }
}

/// Where GAP references come from.
#[derive(Clone, Debug, PartialEq)]
pub enum Reference {
    None,
    /// Held-Karp optimum, up to 18 cities.
    Exact,
    Table(BestKnown),
}

impl FromStr for Reference {
    type Err = anyhow::Error;

    /// `none`, `exact`, `bundled`, or a path to a best-known table.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => Reference::None,
            "exact" => Reference::Exact,
            "bundled" => Reference::Table(BestKnown::bundled()),
            path => Reference::Table(BestKnown::load(Path::new(path))?),
        })
    }
}

impl Reference {
    /// Reference length for `inst`, or `None` when no reference is wanted.
    /// A requested but unavailable reference is an error.
    pub fn length_for(&self, inst: &Instance) -> Result<Option<f64>> {
        match self {
            Reference::None => Ok(None),
            Reference::Exact => {
                if inst.n() > HELD_KARP_MAX {
                    bail!(
                        "exact reference needs at most {HELD_KARP_MAX} cities, '{}' has {}",
                        inst.name(),
                        inst.n()
                    );
                }
                Ok(Some(held_karp(inst)?.length))
            }
            Reference::Table(t) => t
                .get(inst.name())
                .map(Some)
                .ok_or_else(|| anyhow!("no reference length for instance '{}'", inst.name())),
        }
    }
}
