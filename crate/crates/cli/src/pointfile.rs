//! Point-set files: a `p=<int>` header, then one point per line with its
//! coordinates as exact rationals separated by commas.
//!
//! ```text
//! p=3
//! 1,0,0
//! 0,1/2,-3
//! ```
//!
//! Spaces around coordinates are ignored. Blank lines and duplicate points
//! are errors.

use motif_core::{CoordValue, ParseValueError, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointFileError {
    #[error("line 1: expected header `p=<int>`, found {0:?}")]
    Header(String),
    #[error("line {line}: blank line")]
    Blank { line: usize },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    Arity {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, coordinate {coord}: {source}")]
    Value {
        line: usize,
        coord: usize,
        source: ParseValueError,
    },
    #[error("line {line}: duplicate of the point on line {first}")]
    Duplicate { line: usize, first: usize },
}

pub fn parse_points(text: &str) -> Result<PointSet, PointFileError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let p: usize = header
        .trim()
        .strip_prefix("p=")
        .and_then(|d| d.parse().ok())
        .filter(|&p| p > 0)
        .ok_or_else(|| PointFileError::Header(header.to_string()))?;

    let mut pts = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (k, raw) in lines.enumerate() {
        let line = k + 2;
        if raw.trim().is_empty() {
            return Err(PointFileError::Blank { line });
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        if fields.len() != p {
            return Err(PointFileError::Arity {
                line,
                expected: p,
                found: fields.len(),
            });
        }
        let coords = fields
            .iter()
            .enumerate()
            .map(|(c, f)| {
                f.parse::<CoordValue>()
                    .map_err(|source| PointFileError::Value {
                        line,
                        coord: c + 1,
                        source,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let pt = Point(coords);
        if let Some(&first) = seen.get(&pt) {
            return Err(PointFileError::Duplicate { line, first });
        }
        seen.insert(pt.clone(), line);
        pts.push(pt);
    }
    Ok(PointSet::new(p, pts).expect("arity and uniqueness checked"))
}

pub fn write_points(set: &PointSet) -> String {
    let mut out = format!("p={}\n", set.dim());
    for pt in set {
        let coords: Vec<String> = pt.coords().iter().map(ToString::to_string).collect();
        out.push_str(&coords.join(","));
        out.push('\n');
    }
    out
}
