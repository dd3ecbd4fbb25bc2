//! Exact analysis of motif specifications.
//!
//! A motif specification fixes, for each of `p` coordinates, which positions
//! of an `L`-tuple of points must share that coordinate and which positions
//! are pinned to a constant. This crate builds the hypergraph of such a
//! specification, solves its fractional transversal and matching programs in
//! exact rational arithmetic, counts motifs in finite point sets, and
//! generates the extremal point sets that attain the counting bounds.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line front end live in the `motif-cli` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bound;
pub mod construct;
pub mod count;
#[cfg(test)]
mod fixtures;
pub mod hypergraph;
pub mod lp;
pub mod points;
pub mod search;
mod simplex;
pub mod spec;
pub mod starred;
pub mod value;

pub use bound::{verify_upper_bound, UpperBoundReport};
pub use construct::{
    grid_set, matching_construction, matching_construction_limited, single_starred_construction,
    uniform_maximum, ConstructionError, MatchingConstruction, StarredConstruction,
};
pub use count::{count_motifs_join, count_motifs_naive, line_count, JoinPlan};
pub use hypergraph::{build_hypergraph, Edge, Hypergraph};
pub use lp::{
    balanced_matching, distinct_tableau_rows, duality_certificate, fractional_matching,
    fractional_transversal, DualityCertificate, FractionalMatching, FractionalTransversal, LpError,
};
pub use points::{Pattern, PatternEntry, Point, PointSet, PointSetError};
pub use search::{
    exhaustive_maximizer, exhaustive_partition, integer_box, is_grid, local_search,
    relocation_improve, GridFactors, SearchError, SearchMode, SearchResult,
};
pub use spec::{
    build_matrix, classify_spec, validate_spec, BlockId, Cell, CoordinateMatrix, MotifSpec,
    RawSpec, SpecClass, SpecError, UniformClass,
};
pub use starred::{
    enumerate_centers, in_line, star_profile, structure_report, thresholds, CenterPoint,
    LinePartition, StarProfile, StarredError, StructureReport, Thresholds,
};
pub use value::{CoordValue, ParseValueError, Rational};

/// Errors raised when a point set does not live in the specification's space.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("point set has dimension {found}, specification expects {expected}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}
