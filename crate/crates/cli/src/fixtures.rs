//! Specifications and point sets bundled with the binary.

use motif_core::{MotifSpec, PointSet};

/// Four points, each coordinate pairing them up differently. Its hypergraph
/// is the complete graph on four vertices.
pub const K4_SPEC: &str = include_str!("../fixtures/k4.json");
/// Three points pairwise sharing two coordinates.
pub const CORNER_SPEC: &str = include_str!("../fixtures/corner.json");
/// Two points on each positive axis.
pub const CORNER_SIX: &str = include_str!("../fixtures/corner6.pts");
pub const CUBE: &str = include_str!("../fixtures/cube2.pts");

pub fn k4() -> MotifSpec {
    crate::specfile::parse_spec(K4_SPEC).expect("bundled spec")
}

pub fn corner() -> MotifSpec {
    crate::specfile::parse_spec(CORNER_SPEC).expect("bundled spec")
}

pub fn corner_six() -> PointSet {
    crate::pointfile::parse_points(CORNER_SIX).expect("bundled points")
}

pub fn cube() -> PointSet {
    crate::pointfile::parse_points(CUBE).expect("bundled points")
}
