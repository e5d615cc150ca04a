//! The curated list of intersection arrays shipped with the tool.

use std::fmt;
use std::str::FromStr;

use qpoly_core::graph::GraphFamily;
use qpoly_core::{parse_array, Error, IntersectionArray, Result};

/// The catalog bundled into the binary.
pub const BUNDLED: &str = include_str!("../catalog/catalog.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    QPolynomial,
    NotQPolynomial,
    Imprimitive,
}

impl FromStr for Expectation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q-polynomial" => Ok(Expectation::QPolynomial),
            "not-q-polynomial" => Ok(Expectation::NotQPolynomial),
            "imprimitive" => Ok(Expectation::Imprimitive),
            _ => Err(Error::Parse(format!("unknown expectation '{s}'"))),
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::QPolynomial => "q-polynomial",
            Expectation::NotQPolynomial => "not-q-polynomial",
            Expectation::Imprimitive => "imprimitive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub array: IntersectionArray,
    pub tags: Vec<String>,
    pub notes: String,
}

impl CatalogEntry {
    /// The leading plain tag, if any.
    pub fn family(&self) -> Option<&str> {
        self.tags.iter().find(|t| !t.contains(':')).map(String::as_str)
    }

    fn tag_value(&self, key: &str) -> Option<&str> {
        self.tags.iter().find_map(|t| t.strip_prefix(key)?.strip_prefix(':'))
    }

    pub fn realization(&self) -> Option<GraphFamily> {
        self.tag_value("realize").and_then(|s| s.parse().ok())
    }

    pub fn expectation(&self) -> Option<Expectation> {
        self.tag_value("expect").and_then(|s| s.parse().ok())
    }

    /// Whether the expectation is backed by this repository's oracles and
    /// should be asserted.
    pub fn oracle_derived(&self) -> bool {
        self.tag_value("prov") == Some("oracle")
    }

    pub fn matches(&self, filter: &str) -> bool {
        self.tags.iter().any(|t| t == filter) || self.name == filter
    }
}

/// Parse `name|array|tags|notes` lines; `#` starts a comment line.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!(
                "catalog line {}: expected 4 '|'-separated fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let array = parse_array(fields[1])
            .map_err(|e| Error::Parse(format!("catalog line {}: {e}", lineno + 1)))?;
        let tags = fields[2]
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect();
        let entry = CatalogEntry {
            name: fields[0].to_string(),
            array,
            tags,
            notes: fields[3].to_string(),
        };
        if let Some(v) = entry.tag_value("expect") {
            v.parse::<Expectation>()?;
        }
        if let Some(v) = entry.tag_value("realize") {
            v.parse::<GraphFamily>()?;
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn bundled() -> Vec<CatalogEntry> {
    parse_catalog(BUNDLED).expect("bundled catalog is well formed")
}
