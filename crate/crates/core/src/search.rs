//! Desk-scale maximizer search: exhaustive enumeration of `r`-subsets of a
//! universe, grid recognition for uniform specifications, and relocation
//! hill-climbing for single-starred ones.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::bound::compare_with_power;
use crate::count::{count_motifs_join, line_count};
use crate::hypergraph::build_hypergraph;
use crate::lp::fractional_transversal;
use crate::points::{PatternEntry, Point, PointSet};
use crate::spec::{classify_spec, MotifSpec};
use crate::starred::{candidate_assignments, star_profile};
use crate::value::{CoordValue, Rational};
use crate::DimensionMismatch;

/// Default cap on the number of subsets an exhaustive search may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("{subsets} subsets exceed the budget of {budget}")]
    BudgetExceeded { subsets: BigUint, budget: u64 },
    #[error("r = {r} exceeds the universe size {universe}")]
    RTooLarge { r: usize, universe: usize },
    #[error("specification is not uniform")]
    NotUniform,
    #[error("specification is not single-starred")]
    NotSingleStarred,
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    LocalSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub r: usize,
    pub best_count: BigUint,
    /// Every argmax subset (exhaustive) or the best set found (local).
    pub maximizers: Vec<PointSet>,
    pub mode: SearchMode,
    pub subsets_examined: u64,
    pub tau: Rational,
}

impl SearchResult {
    /// Combines results over disjoint parts of the same search. Associative;
    /// maximizers keep the order of `self` followed by `other`.
    pub fn merge(mut self, other: SearchResult) -> SearchResult {
        assert_eq!(self.r, other.r, "merging searches with different r");
        self.subsets_examined += other.subsets_examined;
        match self.best_count.cmp(&other.best_count) {
            core::cmp::Ordering::Less => {
                self.best_count = other.best_count;
                self.maximizers = other.maximizers;
            }
            core::cmp::Ordering::Equal => self.maximizers.extend(other.maximizers),
            core::cmp::Ordering::Greater => {}
        }
        self
    }

    /// `best_count <= r^tau`.
    pub fn respects_bound(&self) -> bool {
        compare_with_power(&self.best_count, self.r, &self.tau).is_le()
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn check_dim(spec: &MotifSpec, set: &PointSet) -> Result<(), DimensionMismatch> {
    if spec.dim() != set.dim() {
        return Err(DimensionMismatch {
            expected: spec.dim(),
            found: set.dim(),
        });
    }
    Ok(())
}

/// Checks the preconditions of an exhaustive search and returns `tau*`.
fn prepare(
    spec: &MotifSpec,
    universe: &PointSet,
    r: usize,
    budget: u64,
) -> Result<Rational, SearchError> {
    check_dim(spec, universe)?;
    if r > universe.len() {
        return Err(SearchError::RTooLarge {
            r,
            universe: universe.len(),
        });
    }
    let subsets = binomial(universe.len(), r);
    if subsets > BigUint::from(budget) {
        return Err(SearchError::BudgetExceeded { subsets, budget });
    }
    Ok(fractional_transversal(&build_hypergraph(spec)).0)
}

/// All `r`-subsets of `universe` with the largest motif count.
pub fn exhaustive_maximizer(
    spec: &MotifSpec,
    universe: &PointSet,
    r: usize,
    budget: u64,
) -> Result<SearchResult, SearchError> {
    exhaustive_partition(spec, universe, r, budget, 0..universe.len().max(1))
}

/// The part of [`exhaustive_maximizer`] whose subsets have their first
/// universe index in `first`. Merging the parts over a partition of
/// `0..|universe|` in order reproduces the full search exactly.
pub fn exhaustive_partition(
    spec: &MotifSpec,
    universe: &PointSet,
    r: usize,
    budget: u64,
    first: Range<usize>,
) -> Result<SearchResult, SearchError> {
    let tau = prepare(spec, universe, r, budget)?;
    let pts = universe.points();
    let mut best = SearchResult {
        r,
        best_count: BigUint::default(),
        maximizers: Vec::new(),
        mode: SearchMode::Exhaustive,
        subsets_examined: 0,
        tau,
    };
    if r == 0 {
        if first.start == 0 {
            best.maximizers.push(PointSet::empty(universe.dim()));
            best.subsets_examined = 1;
        }
        return Ok(best);
    }
    let n = pts.len();
    let visit = |idx: &[usize], best: &mut SearchResult| {
        let set = PointSet::from_unique(universe.dim(), idx.iter().map(|&i| pts[i].clone()));
        let count = count_motifs_join(spec, &set).expect("dimension checked");
        best.subsets_examined += 1;
        if best.maximizers.is_empty() || count > best.best_count {
            best.best_count = count;
            best.maximizers.clear();
            best.maximizers.push(set);
        } else if count == best.best_count {
            best.maximizers.push(set);
        }
    };
    for head in first.start..first.end.min(n) {
        if head + r > n {
            break;
        }
        let mut idx: Vec<usize> = (head..head + r).collect();
        loop {
            visit(&idx, &mut best);
            // advance the tail, keeping idx[0] fixed
            let Some(j) = (1..r).rev().find(|&j| idx[j] < n - r + j) else {
                break;
            };
            idx[j] += 1;
            for t in j + 1..r {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    Ok(best)
}

/// The projections of a grid onto its coordinate groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFactors {
    /// Coordinate groups, as in the uniform classification.
    pub groups: Vec<Vec<usize>>,
    /// Sorted distinct projections onto each group.
    pub factors: Vec<Vec<Vec<CoordValue>>>,
}

/// `Some(factors)` iff `set` is the product of its projections onto the
/// coordinate groups of a uniform specification. The empty set is a grid.
pub fn is_grid(spec: &MotifSpec, set: &PointSet) -> Result<Option<GridFactors>, SearchError> {
    check_dim(spec, set)?;
    let uniform = classify_spec(spec).uniform.ok_or(SearchError::NotUniform)?;
    let factors: Vec<Vec<Vec<CoordValue>>> = uniform
        .groups
        .iter()
        .map(|cols| {
            set.iter()
                .map(|pt| cols.iter().map(|&m| pt.0[m].clone()).collect::<Vec<_>>())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    // set is contained in the product, so equal sizes mean equality
    let product: BigUint = factors.iter().map(|f| BigUint::from(f.len())).product();
    if set.is_empty() || product == BigUint::from(set.len()) {
        Ok(Some(GridFactors {
            groups: uniform.groups,
            factors,
        }))
    } else {
        Ok(None)
    }
}

fn count(spec: &MotifSpec, set: &PointSet) -> BigUint {
    count_motifs_join(spec, set).expect("dimension checked")
}

/// One relocation move: the point losing the fewest motifs is removed and
/// re-added on the line `f_j(v)` whose other `L-1` lines hold the most
/// points (by product). Ties go to the lexicographically smallest point.
/// Returns the moved-to set, or `None` when no distinct placement exists.
fn relocate_point(
    spec: &MotifSpec,
    profile: &crate::starred::StarProfile,
    set: &PointSet,
    current: &BigUint,
) -> Option<PointSet> {
    let mut victim: Option<(BigUint, &Point)> = None;
    for w in set {
        let mut rest = set.clone();
        rest.remove(w);
        let loss = current - count(spec, &rest);
        let better = match &victim {
            None => true,
            Some((l, p)) => loss < *l || (loss == *l && w < *p),
        };
        if better {
            victim = Some((loss, w));
        }
    }
    let (_, w) = victim?;
    let mut rest = set.clone();
    rest.remove(w);

    let l = profile.tuple_len();
    let mut best: Option<(BigUint, Point)> = None;
    for v in candidate_assignments(profile, &rest, |c| c >= 1) {
        let counts: Vec<usize> = (0..l)
            .map(|j| line_count(&rest, &profile.row_pattern(j, &v)))
            .collect();
        for j in 0..l {
            let score: BigUint = (0..l)
                .filter(|&i| i != j)
                .map(|i| BigUint::from(counts[i]))
                .product();
            let pat = profile.row_pattern(j, &v);
            let star = profile.star_column(j);
            let mut t = 0i64;
            let pt = loop {
                let coords = pat
                    .0
                    .iter()
                    .map(|e| match e {
                        PatternEntry::Value(x) => x.clone(),
                        PatternEntry::Star => CoordValue::integer(t),
                    })
                    .collect();
                let pt = Point(coords);
                if !rest.contains(&pt) {
                    break pt;
                }
                t += 1;
            };
            debug_assert!(pt.0[star] == CoordValue::integer(t));
            let better = match &best {
                None => true,
                Some((s, p)) => score > *s || (score == *s && pt < *p),
            };
            if better {
                best = Some((score, pt));
            }
        }
    }
    let (_, pt) = best?;
    if &pt == w {
        return None;
    }
    rest.insert(pt);
    Some(rest)
}

/// Hill-climbing by relocation moves, accepted while the motif count does
/// not decrease. Stops after `max_iters` moves or at a fixpoint. Sets of at
/// most one point are returned unchanged.
pub fn relocation_improve(
    spec: &MotifSpec,
    set: &PointSet,
    max_iters: usize,
) -> Result<PointSet, SearchError> {
    let profile = star_profile(spec).map_err(|_| SearchError::NotSingleStarred)?;
    check_dim(spec, set)?;
    let mut cur = set.clone();
    if cur.len() <= 1 {
        return Ok(cur);
    }
    let mut cur_count = count(spec, &cur);
    for _ in 0..max_iters {
        let Some(next) = relocate_point(spec, &profile, &cur, &cur_count) else {
            break;
        };
        let next_count = count(spec, &next);
        if next_count < cur_count || next.same_set(&cur) {
            break;
        }
        cur = next;
        cur_count = next_count;
    }
    Ok(cur)
}

/// Relocation search from a given start set, packaged as a search result.
pub fn local_search(
    spec: &MotifSpec,
    start: &PointSet,
    max_iters: usize,
) -> Result<SearchResult, SearchError> {
    let best = relocation_improve(spec, start, max_iters)?;
    let tau = fractional_transversal(&build_hypergraph(spec)).0;
    Ok(SearchResult {
        r: best.len(),
        best_count: count(spec, &best),
        maximizers: vec![best],
        mode: SearchMode::LocalSearch,
        subsets_examined: 1,
        tau,
    })
}

/// `binomial(n, k)` as `u64`, if it fits.
pub fn subset_count(n: usize, k: usize) -> Option<u64> {
    binomial(n, k).to_u64()
}

/// `{0, ..., s-1}^p` in lexicographic order.
pub fn integer_box(p: usize, s: usize) -> PointSet {
    let mut out = Vec::new();
    if s > 0 {
        let mut idx = vec![0i64; p];
        'outer: loop {
            out.push(Point::from_ints(&idx));
            for m in (0..p).rev() {
                if idx[m] + 1 < s as i64 {
                    idx[m] += 1;
                    continue 'outer;
                }
                idx[m] = 0;
            }
            break;
        }
    }
    PointSet::from_unique(p, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_motifs_naive;
    use crate::fixtures::{corner, corner_six, k4, set};

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70u32.into());
        assert_eq!(binomial(8, 0), 1u32.into());
        assert_eq!(binomial(3, 5), 0u32.into());
        assert_eq!(subset_count(8, 2), Some(28));
    }

    #[test]
    fn integer_boxes() {
        let b = integer_box(3, 2);
        assert_eq!(b.len(), 8);
        assert_eq!(b.points()[1], Point::from_ints(&[0, 0, 1]));
        assert!(integer_box(2, 0).is_empty());
    }

    #[test]
    fn k4_cube_sweep() {
        // best counts from brute force over every subset of {0,1}^3
        let u = integer_box(3, 2);
        let want = [
            (0, 0u32, 1usize),
            (1, 1, 8),
            (2, 4, 12),
            (3, 7, 24),
            (4, 16, 6),
            (5, 19, 24),
            (6, 28, 12),
            (7, 41, 8),
            (8, 64, 1),
        ];
        for (r, best, n_max) in want {
            let res = exhaustive_maximizer(&k4(), &u, r, DEFAULT_BUDGET).unwrap();
            assert_eq!(res.best_count, best.into(), "r = {r}");
            assert_eq!(res.maximizers.len(), n_max, "r = {r}");
            assert!(res.respects_bound());
            assert_eq!(res.subsets_examined, subset_count(8, r).unwrap());
        }
    }

    #[test]
    fn four_point_maximizers_are_grids() {
        let res = exhaustive_maximizer(&k4(), &integer_box(3, 2), 4, DEFAULT_BUDGET).unwrap();
        for m in &res.maximizers {
            let f = is_grid(&k4(), m).unwrap().expect("grid");
            let mut sizes: Vec<usize> = f.factors.iter().map(Vec::len).collect();
            sizes.sort();
            assert_eq!(sizes, vec![1, 2, 2]);
        }
    }

    #[test]
    fn partitions_merge_to_full_search() {
        let u = integer_box(3, 2);
        let full = exhaustive_maximizer(&corner(), &u, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(full.best_count, 4u32.into());
        assert_eq!(full.maximizers.len(), 12);
        let merged = [0..3, 3..5, 5..8]
            .into_iter()
            .map(|r| exhaustive_partition(&corner(), &u, 2, DEFAULT_BUDGET, r).unwrap())
            .reduce(SearchResult::merge)
            .unwrap();
        assert_eq!(merged, full);
    }

    #[test]
    fn search_errors() {
        let u = integer_box(3, 2);
        assert_eq!(
            exhaustive_maximizer(&k4(), &u, 9, DEFAULT_BUDGET).unwrap_err(),
            SearchError::RTooLarge { r: 9, universe: 8 }
        );
        assert!(matches!(
            exhaustive_maximizer(&k4(), &u, 4, 69),
            Err(SearchError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            exhaustive_maximizer(&k4(), &integer_box(2, 2), 1, DEFAULT_BUDGET),
            Err(SearchError::Dimension(_))
        ));
    }

    #[test]
    fn grid_checks() {
        let s = k4();
        let f = is_grid(&s, &integer_box(3, 2)).unwrap().unwrap();
        assert!(f.factors.iter().all(|f| f.len() == 2));
        assert_eq!(
            is_grid(&s, &set(3, &[&[0, 0, 0], &[1, 1, 1]])).unwrap(),
            None
        );
        assert!(is_grid(&s, &set(3, &[&[4, 5, 6]])).unwrap().is_some());
        assert!(is_grid(&s, &PointSet::empty(3)).unwrap().is_some());
        assert_eq!(
            is_grid(&corner(), &corner_six()),
            Err(SearchError::NotUniform)
        );
    }

    #[test]
    fn relocation_creates_motifs() {
        let s = corner();
        // pairwise distinct in every coordinate: only the constant tuples
        let start = set(
            3,
            &[
                &[1, 2, 3],
                &[4, 5, 6],
                &[7, 8, 9],
                &[10, 11, 12],
                &[13, 14, 15],
                &[16, 17, 18],
            ],
        );
        assert_eq!(count_motifs_naive(&s, &start).unwrap(), 6u32.into());
        let out = relocation_improve(&s, &start, 20).unwrap();
        assert_eq!(out.len(), 6);
        let after = count_motifs_naive(&s, &out).unwrap();
        assert!(after > 6u32.into());
    }

    #[test]
    fn relocation_edge_cases() {
        let one = set(3, &[&[1, 2, 3]]);
        assert_eq!(relocation_improve(&corner(), &one, 5).unwrap(), one);
        let six = corner_six();
        let out = relocation_improve(&corner(), &six, 10).unwrap();
        assert!(count_motifs_naive(&corner(), &out).unwrap() >= 20u32.into());
        assert_eq!(
            relocation_improve(&k4(), &six, 1),
            Err(SearchError::NotSingleStarred)
        );
        let res = local_search(&corner(), &six, 10).unwrap();
        assert_eq!(res.mode, SearchMode::LocalSearch);
        assert!(res.respects_bound());
    }
}
