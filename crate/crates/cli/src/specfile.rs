//! JSON specification files.
//!
//! ```json
//! {
//!   "L": 3,
//!   "p": 2,
//!   "partitions": [[[1, 2], [3]], [[1, 3]]],
//!   "constants": [{ "row": 2, "col": 2, "value": "-1/2" }]
//! }
//! ```
//!
//! Indices are one-based. A constant's `value` is either a JSON integer or a
//! string holding an exact rational `a` or `a/b`. Unknown keys are rejected
//! and `constants` may be omitted when empty.

use motif_core::{validate_spec, CoordValue, MotifSpec, RawSpec, SpecError};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SpecFileError {
    #[error("malformed specification: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("constant at row {row}, col {col}: {source}")]
    Value {
        row: usize,
        col: usize,
        source: motif_core::ParseValueError,
    },
    #[error("invalid specification: {0}")]
    Invalid(#[from] SpecError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    #[serde(rename = "L")]
    l: usize,
    p: usize,
    partitions: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    constants: Vec<ConstantDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantDoc {
    row: usize,
    col: usize,
    value: ValueDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ValueDoc {
    Int(i64),
    Text(String),
}

pub fn parse_spec(text: &str) -> Result<MotifSpec, SpecFileError> {
    let doc: SpecDoc = serde_json::from_str(text)?;
    let mut constants = Vec::with_capacity(doc.constants.len());
    for c in doc.constants {
        let value = match c.value {
            ValueDoc::Int(n) => CoordValue::integer(n),
            ValueDoc::Text(s) => s.parse().map_err(|source| SpecFileError::Value {
                row: c.row,
                col: c.col,
                source,
            })?,
        };
        constants.push((c.row, c.col, value));
    }
    let raw = RawSpec {
        l: doc.l,
        p: doc.p,
        partitions: doc.partitions,
        constants,
    };
    Ok(validate_spec(&raw)?)
}

/// Canonical form: blocks sorted, constants in row-major order, integer
/// constants as JSON integers when they fit.
pub fn write_spec(spec: &MotifSpec) -> String {
    let raw = spec.to_raw();
    let constants = raw
        .constants
        .into_iter()
        .map(|(row, col, v)| {
            let r = v.as_rational();
            let value = match (r.is_integer(), num_traits::ToPrimitive::to_i64(r.numer())) {
                (true, Some(n)) => ValueDoc::Int(n),
                _ => ValueDoc::Text(v.to_string()),
            };
            ConstantDoc { row, col, value }
        })
        .collect::<Vec<_>>();
    let mut out = format!(
        "{{\n  \"L\": {},\n  \"p\": {},\n  \"partitions\": {}",
        raw.l,
        raw.p,
        serde_json::to_string(&raw.partitions).expect("serializes")
    );
    if !constants.is_empty() {
        out.push_str(",\n  \"constants\": ");
        out.push_str(&serde_json::to_string(&constants).expect("serializes"));
    }
    out.push_str("\n}\n");
    out
}
