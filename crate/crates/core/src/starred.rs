//! Single-starred specifications: star profile, thresholds, centers and the
//! line structure of point sets.
//!
//! In a single-starred specification every row has exactly one singleton
//! block. Replacing those variables by stars gives a tableau whose rows,
//! once the remaining `k` variables are assigned a vector `v`, are the line
//! patterns `f_1(v), ..., f_L(v)`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::count::line_count;
use crate::points::{Pattern, PatternEntry, Point, PointSet};
use crate::spec::{classify_spec, BlockId, MotifSpec};
use crate::value::{CoordValue, Rational};
use crate::DimensionMismatch;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StarredError {
    #[error("specification is not single-starred")]
    NotSingleStarred,
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

/// Where the stars of the tableau sit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarProfile {
    l: usize,
    /// Star columns `C_1 < ... < C_q`, zero-based.
    pub star_columns: Vec<usize>,
    /// `alphas[i]` stars in column `star_columns[i]`; they sum to `L`.
    pub alphas: Vec<usize>,
    /// `sigma[j]` indexes `star_columns` for the star of row `j`.
    pub sigma: Vec<usize>,
    /// Non-star variables (blocks of size at least two), in id order.
    pub variables: Vec<BlockId>,
    /// `prod alpha_i^alpha_i / L^L`.
    pub constant: Rational,
    /// `cells[j][m]`: `None` for the star, otherwise an index into `variables`.
    cells: Vec<Vec<Option<usize>>>,
}

impl StarProfile {
    pub fn tuple_len(&self) -> usize {
        self.l
    }

    /// Number `k` of non-star variables.
    pub fn k(&self) -> usize {
        self.variables.len()
    }

    pub fn q(&self) -> usize {
        self.star_columns.len()
    }

    /// Star column of row `j`.
    pub fn star_column(&self, row: usize) -> usize {
        self.star_columns[self.sigma[row]]
    }

    /// The line pattern `f_row(v)`.
    pub fn row_pattern(&self, row: usize, v: &[CoordValue]) -> Pattern {
        assert_eq!(v.len(), self.k(), "assignment length");
        Pattern(
            self.cells[row]
                .iter()
                .map(|cell| match cell {
                    None => PatternEntry::Star,
                    Some(x) => PatternEntry::Value(v[*x].clone()),
                })
                .collect(),
        )
    }

    pub fn patterns(&self, v: &[CoordValue]) -> Vec<Pattern> {
        (0..self.l).map(|j| self.row_pattern(j, v)).collect()
    }

    /// The variables of row `j` as `(column, variable index)`.
    fn row_vars(&self, row: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells[row]
            .iter()
            .enumerate()
            .filter_map(|(m, c)| c.map(|x| (m, x)))
    }
}

pub fn star_profile(spec: &MotifSpec) -> Result<StarProfile, StarredError> {
    if !classify_spec(spec).single_starred {
        return Err(StarredError::NotSingleStarred);
    }
    let (l, p) = (spec.tuple_len(), spec.dim());
    let singleton = |b: BlockId| spec.block_members(b).len() == 1;

    let variables: Vec<BlockId> = spec
        .blocks()
        .filter(|(_, _, members)| members.len() > 1)
        .map(|(id, _, _)| id)
        .collect();
    let var_index = |b: BlockId| variables.binary_search(&b).ok();

    let mut star_of_row = Vec::with_capacity(l);
    let mut cells = Vec::with_capacity(l);
    for i in 0..l {
        let mut row = Vec::with_capacity(p);
        for m in 0..p {
            let b = spec
                .block_at(i, m)
                .expect("single-starred has no constants");
            if singleton(b) {
                star_of_row.push(m);
                row.push(None);
            } else {
                row.push(var_index(b));
            }
        }
        cells.push(row);
    }
    let star_columns: Vec<usize> = star_of_row
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let sigma: Vec<usize> = star_of_row
        .iter()
        .map(|c| star_columns.binary_search(c).unwrap())
        .collect();
    let mut alphas = vec![0usize; star_columns.len()];
    for &s in &sigma {
        alphas[s] += 1;
    }
    let numer: BigInt = alphas
        .iter()
        .map(|&a| BigInt::from(a).pow(a as u32))
        .product();
    let denom = BigInt::from(l).pow(l as u32);
    Ok(StarProfile {
        l,
        star_columns,
        alphas,
        sigma,
        variables,
        constant: Rational::new(numer, denom),
        cells,
    })
}

/// `M1(L) = L (L^L + 1)` and `M(L) = (2 M1(L))^(L-1) L^2 + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds {
    pub m1: BigUint,
    pub m: BigUint,
}

pub fn thresholds(l: usize) -> Thresholds {
    assert!(l >= 1, "L must be positive");
    let lb = BigUint::from(l);
    let m1 = &lb * (lb.pow(l as u32) + 1u32);
    let m = (&m1 * 2u32).pow(l as u32 - 1) * &lb * &lb + 1u32;
    Thresholds { m1, m }
}

impl Thresholds {
    /// `M(L) >= M1(L) >= 1`.
    pub fn is_consistent(&self) -> bool {
        self.m >= self.m1 && self.m1 >= BigUint::one()
    }

    /// Upper bound `L * M(L)^(L-1)` on the number of centers.
    pub fn center_bound(&self, l: usize) -> BigUint {
        self.m.pow(l as u32 - 1) * BigUint::from(l)
    }
}

/// `count >= r / threshold`, exactly.
fn at_least_fraction(count: usize, r: usize, threshold: &BigUint) -> bool {
    BigUint::from(count) * threshold >= BigUint::from(r)
}

/// An assignment of the non-star variables with its line counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterPoint {
    pub assignment: Vec<CoordValue>,
    /// `line_counts[j]` points match `f_j(v)`.
    pub line_counts: Vec<usize>,
    pub is_center: bool,
    pub is_hypercenter: bool,
}

/// All assignments `v` for which, after omitting some row, every remaining
/// row's line `f_j(v)` satisfies `heavy(line count)`. Each variable occurs
/// in at least two rows, so the remaining rows determine `v` completely.
pub(crate) fn candidate_assignments(
    profile: &StarProfile,
    set: &PointSet,
    heavy: impl Fn(usize) -> bool,
) -> BTreeSet<Vec<CoordValue>> {
    let l = profile.l;
    // For each row, the heavy lines keyed by the row's variable values.
    let lines: Vec<Vec<Vec<(usize, CoordValue)>>> = (0..l)
        .map(|j| {
            let mut counts: alloc::collections::BTreeMap<Vec<(usize, CoordValue)>, usize> =
                Default::default();
            for pt in set {
                let key = profile
                    .row_vars(j)
                    .map(|(m, x)| (x, pt.0[m].clone()))
                    .collect();
                *counts.entry(key).or_default() += 1;
            }
            counts
                .into_iter()
                .filter(|(_, c)| heavy(*c))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();

    let mut out = BTreeSet::new();
    for omitted in 0..l {
        let rows: Vec<usize> = (0..l).filter(|&j| j != omitted).collect();
        let mut partial = vec![None; profile.k()];
        extend(&rows, &lines, &mut partial, &mut out);
    }
    out
}

fn extend(
    rows: &[usize],
    lines: &[Vec<Vec<(usize, CoordValue)>>],
    partial: &mut Vec<Option<CoordValue>>,
    out: &mut BTreeSet<Vec<CoordValue>>,
) {
    let Some((&row, rest)) = rows.split_first() else {
        let full: Option<Vec<CoordValue>> = partial.iter().cloned().collect();
        out.insert(full.expect("remaining rows cover every variable"));
        return;
    };
    for line in &lines[row] {
        if line
            .iter()
            .any(|(x, val)| partial[*x].as_ref().is_some_and(|cur| cur != val))
        {
            continue;
        }
        let newly: Vec<usize> = line
            .iter()
            .filter(|(x, _)| partial[*x].is_none())
            .map(|(x, _)| *x)
            .collect();
        for (x, val) in line {
            partial[*x] = Some(val.clone());
        }
        extend(rest, lines, partial, out);
        for x in newly {
            partial[x] = None;
        }
    }
}

fn evaluate(
    profile: &StarProfile,
    set: &PointSet,
    th: &Thresholds,
    v: Vec<CoordValue>,
) -> CenterPoint {
    let r = set.len();
    let line_counts: Vec<usize> = (0..profile.l)
        .map(|j| line_count(set, &profile.row_pattern(j, &v)))
        .collect();
    let above_m = line_counts
        .iter()
        .filter(|&&c| at_least_fraction(c, r, &th.m))
        .count();
    let is_center = r > 0 && above_m + 1 >= profile.l;
    let is_hypercenter = r > 0 && line_counts.iter().all(|&c| at_least_fraction(c, r, &th.m1));
    CenterPoint {
        assignment: v,
        line_counts,
        is_center,
        is_hypercenter,
    }
}

/// Every center of `set`, in ascending order of assignment.
///
/// An empty set has no centers. Otherwise `r / M(L) > 0`, so each of the
/// `L - 1` heavy rows of a center contains a point of `set`, and anchoring
/// those rows to heavy lines finds every center.
pub fn enumerate_centers(
    spec: &MotifSpec,
    set: &PointSet,
) -> Result<Vec<CenterPoint>, StarredError> {
    let profile = star_profile(spec)?;
    if set.dim() != spec.dim() {
        return Err(DimensionMismatch {
            expected: spec.dim(),
            found: set.dim(),
        }
        .into());
    }
    Ok(centers_with_profile(&profile, set))
}

pub(crate) fn centers_with_profile(profile: &StarProfile, set: &PointSet) -> Vec<CenterPoint> {
    if set.is_empty() {
        return Vec::new();
    }
    let th = thresholds(profile.l);
    let r = set.len();
    let centers: Vec<CenterPoint> =
        candidate_assignments(profile, set, |c| at_least_fraction(c, r, &th.m))
            .into_iter()
            .map(|v| evaluate(profile, set, &th, v))
            .filter(|c| c.is_center)
            .collect();
    assert!(
        BigUint::from(centers.len()) <= th.center_bound(profile.l),
        "center count exceeds L*M(L)^(L-1)"
    );
    centers
}

/// Whether `w` lies on one of the lines `f_i(v)`.
pub fn in_line(profile: &StarProfile, v: &[CoordValue], w: &Point) -> bool {
    (0..profile.l).any(|i| profile.row_pattern(i, v).matches(w))
}

/// `q` lines through one center covering the whole set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePartition {
    pub center: Vec<CoordValue>,
    /// One pattern per star column, in column order.
    pub lines: Vec<Pattern>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub r: usize,
    pub centers: Vec<CenterPoint>,
    pub n_hypercenters: usize,
    pub has_unique_center: bool,
    pub has_unique_hypercenter: bool,
    /// Every point is in line with at least one center.
    pub all_points_in_line: bool,
    pub lines: Result<LinePartition, String>,
}

impl StructureReport {
    pub fn n_centers(&self) -> usize {
        self.centers.len()
    }

    /// All structural properties of an optimal large set hold at once.
    pub fn fully_structured(&self) -> bool {
        self.has_unique_center
            && self.centers[0].is_hypercenter
            && self.all_points_in_line
            && self.lines.is_ok()
    }
}

fn line_partition(
    profile: &StarProfile,
    set: &PointSet,
    v: &[CoordValue],
) -> Option<LinePartition> {
    let distinct: BTreeSet<Pattern> = profile.patterns(v).into_iter().collect();
    if distinct.len() != profile.q() {
        return None;
    }
    if !set
        .iter()
        .all(|w| distinct.iter().any(|pat| pat.matches(w)))
    {
        return None;
    }
    let mut lines: Vec<Pattern> = distinct.into_iter().collect();
    let star_pos = |pat: &Pattern| pat.0.iter().position(|e| *e == PatternEntry::Star);
    lines.sort_by_key(star_pos);
    Some(LinePartition {
        center: v.to_vec(),
        lines,
    })
}

/// Measures the line structure of `set`: its centers, hypercenters, whether
/// every point is in line with a center, and whether some center's `q`
/// lines cover the set. Hypercenters are tried first for the line cover.
pub fn structure_report(spec: &MotifSpec, set: &PointSet) -> Result<StructureReport, StarredError> {
    let profile = star_profile(spec)?;
    let centers = enumerate_centers(spec, set)?;
    let n_hypercenters = centers.iter().filter(|c| c.is_hypercenter).count();
    let all_points_in_line = set
        .iter()
        .all(|w| centers.iter().any(|c| in_line(&profile, &c.assignment, w)));

    let lines = if centers.is_empty() {
        Err(String::from("no center"))
    } else {
        centers
            .iter()
            .filter(|c| c.is_hypercenter)
            .chain(centers.iter().filter(|c| !c.is_hypercenter))
            .find_map(|c| line_partition(&profile, set, &c.assignment))
            .ok_or_else(|| String::from("no center whose q lines cover every point"))
    };

    Ok(StructureReport {
        r: set.len(),
        has_unique_center: centers.len() == 1,
        has_unique_hypercenter: n_hypercenters == 1,
        n_hypercenters,
        all_points_in_line,
        lines,
        centers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_motifs_naive;
    use crate::fixtures::{corner, corner_six, k4, set, spec};

    fn ints(v: &[i64]) -> Vec<CoordValue> {
        v.iter().map(|&x| CoordValue::integer(x)).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn corner_profile() {
        let p = star_profile(&corner()).unwrap();
        assert_eq!(p.star_columns, vec![0, 1, 2]);
        assert_eq!(p.alphas, vec![1, 1, 1]);
        assert_eq!(p.constant, q(1, 27));
        assert_eq!(p.k(), 3);
        // rows (a,b,*), (a,*,c), (*,b,c)
        assert_eq!(p.star_column(0), 2);
        assert_eq!(p.star_column(1), 1);
        assert_eq!(p.star_column(2), 0);
    }

    #[test]
    fn two_row_profile() {
        // (x, *) and (x, *)
        let p = star_profile(&spec(2, 2, &[&[&[1, 2]], &[&[1], &[2]]])).unwrap();
        assert_eq!(p.alphas, vec![2]);
        assert_eq!(p.constant, q(1, 1));
    }

    #[test]
    fn non_starred_rejected() {
        assert_eq!(star_profile(&k4()), Err(StarredError::NotSingleStarred));
        let err = enumerate_centers(&corner(), &PointSet::empty(2)).unwrap_err();
        assert!(matches!(err, StarredError::Dimension(_)));
    }

    #[test]
    fn threshold_values() {
        let t = thresholds(2);
        assert_eq!((t.m1, t.m), (10u32.into(), 81u32.into()));
        let t = thresholds(3);
        assert_eq!(
            (t.m1.clone(), t.m.clone()),
            (84u32.into(), 254_017u32.into())
        );
        assert!(t.is_consistent());
        let t = thresholds(1);
        assert_eq!((t.m1, t.m), (2u32.into(), 2u32.into()));
    }

    #[test]
    fn centers_of_six_point_set() {
        // r / M(3) < 1, so any v with two nonempty lines is a center.
        let s = corner_six();
        let centers = enumerate_centers(&corner(), &s).unwrap();
        assert_eq!(centers.len(), 19);
        assert_eq!(centers.iter().filter(|c| c.is_hypercenter).count(), 7);
        let origin = &centers[0];
        assert_eq!(origin.assignment, ints(&[0, 0, 0]));
        assert_eq!(origin.line_counts, vec![2, 2, 2]);
        assert!(origin.is_hypercenter);
        let c = centers
            .iter()
            .find(|c| c.assignment == ints(&[0, 1, 1]))
            .unwrap();
        assert_eq!(c.line_counts, vec![1, 1, 0]);
        assert!(!c.is_hypercenter);
    }

    #[test]
    fn centers_of_tiny_sets() {
        let centers = enumerate_centers(&corner(), &set(3, &[&[0, 0, 0]])).unwrap();
        assert_eq!(centers.len(), 1);
        assert_eq!(centers[0].line_counts, vec![1, 1, 1]);
        assert!(centers[0].is_center && centers[0].is_hypercenter);

        let two = set(3, &[&[0, 0, 0], &[9, 9, 9]]);
        let centers = enumerate_centers(&corner(), &two).unwrap();
        let got: Vec<_> = centers.iter().map(|c| c.assignment.clone()).collect();
        assert_eq!(got, vec![ints(&[0, 0, 0]), ints(&[9, 9, 9])]);
        assert!(centers.iter().all(|c| c.is_hypercenter));

        assert!(enumerate_centers(&corner(), &PointSet::empty(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn in_line_examples() {
        let p = star_profile(&corner()).unwrap();
        let v = ints(&[0, 0, 0]);
        assert!(in_line(&p, &v, &Point::from_ints(&[0, 0, 7])));
        assert!(in_line(&p, &v, &Point::from_ints(&[-3, 0, 0])));
        assert!(!in_line(&p, &v, &Point::from_ints(&[1, 1, 0])));
    }

    #[test]
    fn six_point_structure() {
        let s = corner_six();
        let rep = structure_report(&corner(), &s).unwrap();
        assert_eq!(rep.n_centers(), 19);
        assert!(!rep.has_unique_center);
        assert!(rep.all_points_in_line);
        let lines = rep.lines.unwrap();
        assert_eq!(lines.center, ints(&[0, 0, 0]));
        let shown: Vec<_> = lines.lines.iter().map(|l| alloc::format!("{l}")).collect();
        assert_eq!(shown, vec!["(*,0,0)", "(0,*,0)", "(0,0,*)"]);
        assert_eq!(count_motifs_naive(&corner(), &s).unwrap(), 20u32.into());
    }

    #[test]
    fn two_far_points_have_no_line_cover() {
        let rep = structure_report(&corner(), &set(3, &[&[0, 0, 0], &[9, 9, 9]])).unwrap();
        assert_eq!(rep.n_centers(), 2);
        assert_eq!(rep.n_hypercenters, 2);
        assert!(rep.all_points_in_line);
        assert!(rep.lines.is_err());
        assert!(!rep.fully_structured());
    }
}
