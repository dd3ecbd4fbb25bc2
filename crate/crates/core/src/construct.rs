//! Extremal point sets: product grids, the fractional-matching blow-up and
//! the single-starred line union. Value alphabets are consecutive integers
//! starting at one.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::hypergraph::build_hypergraph;
use crate::lp::{balanced_matching, distinct_tableau_rows, FractionalMatching};
use crate::points::{Point, PointSet};
use crate::spec::{build_matrix, classify_spec, Cell, MotifSpec};
use crate::starred::star_profile;
use crate::value::{CoordValue, Rational};

/// Largest point set a construction will materialize.
pub const MAX_CONSTRUCTION_POINTS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("specification is not uniform")]
    NotUniform,
    #[error("specification is not single-starred")]
    NotSingleStarred,
    #[error("expected {expected} group sizes, got {found}")]
    GroupCount { expected: usize, found: usize },
    #[error("sizes must be positive")]
    ZeroSize,
    #[error("r = {r} is smaller than L = {l}")]
    RTooSmall { r: usize, l: usize },
    /// The optimal matching is zero (no edges). The all-constant rows form
    /// the only construction; it has exactly one motif.
    #[error(
        "fractional matching number is zero; the construction is the single all-constant tuple"
    )]
    MatchingIsZero { fallback: PointSet },
    #[error("construction would have {points} points (limit {limit})")]
    TooLarge { points: BigUint, limit: usize },
}

fn integer_point(coords: &[u64]) -> Point {
    Point(
        coords
            .iter()
            .map(|&c| CoordValue::integer(c as i64))
            .collect(),
    )
}

/// Product grid with `sizes[g]` values on coordinate group `g`.
///
/// Group `g` of the uniform classification contributes the diagonal points
/// `(t, ..., t)`, `t = 1..=sizes[g]`, of its coordinates; identical
/// partitions make those coordinates behave as one.
pub fn grid_set(spec: &MotifSpec, sizes: &[usize]) -> Result<PointSet, ConstructionError> {
    let class = classify_spec(spec);
    let uniform = class.uniform.ok_or(ConstructionError::NotUniform)?;
    if sizes.len() != uniform.groups.len() {
        return Err(ConstructionError::GroupCount {
            expected: uniform.groups.len(),
            found: sizes.len(),
        });
    }
    if sizes.contains(&0) {
        return Err(ConstructionError::ZeroSize);
    }
    let total: BigUint = sizes.iter().map(|&s| BigUint::from(s)).product();
    if total > BigUint::from(MAX_CONSTRUCTION_POINTS) {
        return Err(ConstructionError::TooLarge {
            points: total,
            limit: MAX_CONSTRUCTION_POINTS,
        });
    }
    let mut group_of = vec![0usize; spec.dim()];
    for (g, cols) in uniform.groups.iter().enumerate() {
        for &m in cols {
            group_of[m] = g;
        }
    }
    let mut idx = vec![1u64; sizes.len()];
    let mut points = Vec::new();
    'outer: loop {
        let coords: Vec<u64> = group_of.iter().map(|&g| idx[g]).collect();
        points.push(integer_point(&coords));
        for g in (0..sizes.len()).rev() {
            if idx[g] < sizes[g] as u64 {
                idx[g] += 1;
                continue 'outer;
            }
            idx[g] = 1;
        }
        break;
    }
    Ok(PointSet::from_unique(spec.dim(), points))
}

/// `r^(L/n)`, the maximum motif count of an `r`-point set for a uniform
/// specification with edge size `n` (`n` divides `L`).
pub fn uniform_maximum(l: usize, n: usize, r: usize) -> BigUint {
    assert!(n > 0 && l.is_multiple_of(n), "edge size must divide L");
    BigUint::from(r).pow((l / n) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingConstruction {
    pub points: PointSet,
    /// Least common multiple of the denominators of the positive weights.
    pub d: u64,
    pub matching: FractionalMatching,
    pub nu: Rational,
    /// Distinct tableau rows under `matching`.
    pub l_prime: usize,
    /// `M^(d nu)`: every joint assignment of the variables is a motif.
    pub guarantee: BigUint,
}

/// Every variable of edge `e` ranges over `1..=M^(d f(e))`; the set is all
/// rows of the coordinate matrix under all such assignments.
///
/// Uses [`balanced_matching`], so symmetric specifications get the
/// symmetric blow-up.
pub fn matching_construction(
    spec: &MotifSpec,
    m: u64,
) -> Result<MatchingConstruction, ConstructionError> {
    matching_construction_limited(spec, m, MAX_CONSTRUCTION_POINTS)
}

/// [`matching_construction`] refusing outputs above `limit` points.
pub fn matching_construction_limited(
    spec: &MotifSpec,
    m: u64,
    limit: usize,
) -> Result<MatchingConstruction, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::ZeroSize);
    }
    let matrix = build_matrix(spec);
    let h = build_hypergraph(spec);
    let (nu, matching) = balanced_matching(&h);
    if nu.is_zero() {
        // No edges: every cell is a constant.
        let rows = matrix.rows().iter().map(|row| {
            Point(
                row.iter()
                    .map(|c| match c {
                        Cell::Const(v) => v.clone(),
                        Cell::Var(_) => unreachable!("no variables without edges"),
                    })
                    .collect(),
            )
        });
        return Err(ConstructionError::MatchingIsZero {
            fallback: PointSet::from_unique(spec.dim(), rows),
        });
    }
    let d = matching
        .common_denominator()
        .to_u64()
        .expect("denominator fits in u64");
    let big_m = BigUint::from(m);

    let exponents: Vec<u32> = matching
        .f
        .iter()
        .map(|w| {
            let e = w * Rational::from_integer(d.into());
            debug_assert!(e.is_integer());
            e.to_integer().to_u32().expect("exponent fits in u32")
        })
        .collect();
    let loads: Vec<u32> = (0..spec.tuple_len())
        .map(|i| {
            matrix
                .row(i)
                .iter()
                .filter_map(|c| match c {
                    Cell::Var(b) => Some(exponents[b.0]),
                    Cell::Const(_) => None,
                })
                .sum()
        })
        .collect();
    let bound: BigUint = loads.iter().map(|&e| big_m.pow(e)).sum();
    if bound > BigUint::from(limit) {
        return Err(ConstructionError::TooLarge {
            points: bound,
            limit,
        });
    }
    let ranges: Vec<u64> = exponents.iter().map(|&e| m.pow(e)).collect();

    let mut points = Vec::new();
    for row in matrix.rows() {
        let vars: Vec<usize> = row
            .iter()
            .filter_map(|c| match c {
                Cell::Var(b) => Some(b.0),
                Cell::Const(_) => None,
            })
            .collect();
        let mut idx = vec![1u64; vars.len()];
        'outer: loop {
            let mut k = 0;
            let pt = Point(
                row.iter()
                    .map(|c| match c {
                        Cell::Const(v) => v.clone(),
                        Cell::Var(_) => {
                            k += 1;
                            CoordValue::integer(idx[k - 1] as i64)
                        }
                    })
                    .collect(),
            );
            points.push(pt);
            for j in (0..vars.len()).rev() {
                if idx[j] < ranges[vars[j]] {
                    idx[j] += 1;
                    continue 'outer;
                }
                idx[j] = 1;
            }
            break;
        }
    }
    let points = PointSet::from_unique(spec.dim(), points);

    let d_nu = (&nu * Rational::from_integer(d.into())).to_integer();
    let guarantee = big_m.pow(d_nu.to_u32().expect("d * nu fits in u32"));
    let l_prime = distinct_tableau_rows(spec, &matching);

    let m_d = BigUint::from(m).pow(d as u32);
    let size = BigUint::from(points.len());
    assert!(m_d <= size, "some vertex must be fully loaded");
    assert!(
        size <= &m_d * BigUint::from(l_prime),
        "at most L' distinct row sets"
    );

    Ok(MatchingConstruction {
        points,
        d,
        matching,
        nu,
        l_prime,
        guarantee,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarredConstruction {
    pub points: PointSet,
    /// `floor(r / L)`.
    pub n: usize,
    /// `prod (alpha_i N)^alpha_i = C (L N)^L`.
    pub guarantee: BigUint,
}

/// Union of `q` axis-parallel lines through the origin: `alpha_i N` points
/// on line `i`, padded to exactly `r` points with `(j, -1, ..., -1)` for
/// fresh `j > L N`.
pub fn single_starred_construction(
    spec: &MotifSpec,
    r: usize,
) -> Result<StarredConstruction, ConstructionError> {
    let profile = star_profile(spec).map_err(|_| ConstructionError::NotSingleStarred)?;
    let l = spec.tuple_len();
    if r < l {
        return Err(ConstructionError::RTooSmall { r, l });
    }
    if r > MAX_CONSTRUCTION_POINTS {
        return Err(ConstructionError::TooLarge {
            points: BigUint::from(r),
            limit: MAX_CONSTRUCTION_POINTS,
        });
    }
    let p = spec.dim();
    let n = r / l;
    let mut points = Vec::with_capacity(r);
    for (&col, &alpha) in profile.star_columns.iter().zip(&profile.alphas) {
        for t in 1..=(alpha * n) {
            let mut coords = vec![0u64; p];
            coords[col] = t as u64;
            points.push(integer_point(&coords));
        }
    }
    for j in (l * n + 1)..=r {
        let mut coords = vec![CoordValue::integer(-1); p];
        coords[0] = CoordValue::integer(j as i64);
        points.push(Point(coords));
    }
    let guarantee = profile
        .alphas
        .iter()
        .map(|&a| BigUint::from(a * n).pow(a as u32))
        .product();
    let points = PointSet::from_unique(p, points);
    debug_assert_eq!(points.len(), r);
    Ok(StarredConstruction {
        points,
        n,
        guarantee,
    })
}
