use alloc::vec::Vec;

use crate::points::{Point, PointSet};
use crate::spec::{validate_spec, MotifSpec, RawSpec};

pub(crate) fn spec(l: usize, p: usize, parts: &[&[&[usize]]]) -> MotifSpec {
    validate_spec(&RawSpec {
        l,
        p,
        partitions: parts
            .iter()
            .map(|blocks| blocks.iter().map(|b| b.to_vec()).collect())
            .collect(),
        constants: Vec::new(),
    })
    .unwrap()
}

pub(crate) fn k4() -> MotifSpec {
    spec(
        4,
        3,
        &[
            &[&[1, 3], &[2, 4]],
            &[&[1, 4], &[2, 3]],
            &[&[1, 2], &[3, 4]],
        ],
    )
}

pub(crate) fn corner() -> MotifSpec {
    spec(
        3,
        3,
        &[&[&[1, 2], &[3]], &[&[1, 3], &[2]], &[&[1], &[2, 3]]],
    )
}

pub(crate) fn set(p: usize, pts: &[&[i64]]) -> PointSet {
    PointSet::new(p, pts.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
}

/// The six points at distance one and two from the origin on each axis.
pub(crate) fn corner_six() -> PointSet {
    set(
        3,
        &[
            &[1, 0, 0],
            &[2, 0, 0],
            &[0, 1, 0],
            &[0, 2, 0],
            &[0, 0, 1],
            &[0, 0, 2],
        ],
    )
}
