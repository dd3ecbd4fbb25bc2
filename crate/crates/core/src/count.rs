//! Motif counting.
//!
//! [`count_motifs_naive`] enumerates all `r^L` tuples and checks the
//! definition directly; it is the reference oracle. [`count_motifs_join`]
//! backtracks over rows of the coordinate matrix, binding one point per row
//! and looking candidates up in a hash index keyed by the already-bound
//! coordinates of that row.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use hashbrown::HashMap;
use num_bigint::BigUint;

use crate::points::{Pattern, PointSet};
use crate::spec::{build_matrix, Cell, MotifSpec};
use crate::DimensionMismatch;

fn check_dim(spec: &MotifSpec, set: &PointSet) -> Result<(), DimensionMismatch> {
    if spec.dim() != set.dim() {
        return Err(DimensionMismatch {
            expected: spec.dim(),
            found: set.dim(),
        });
    }
    Ok(())
}

/// Brute-force count over `S^L`. Exponential in `L`; only for small inputs.
pub fn count_motifs_naive(spec: &MotifSpec, set: &PointSet) -> Result<BigUint, DimensionMismatch> {
    check_dim(spec, set)?;
    let l = spec.tuple_len();
    let pts = set.points();
    if pts.is_empty() {
        return Ok(BigUint::default());
    }
    let mut idx = vec![0usize; l];
    let mut total: u128 = 0;
    loop {
        let is_motif = spec.partitions().iter().enumerate().all(|(m, blocks)| {
            blocks.iter().all(|block| {
                let first = &pts[idx[block[0]]].0[m];
                block.iter().all(|&i| &pts[idx[i]].0[m] == first)
            })
        }) && spec.constants().all(|((i, m), c)| &pts[idx[i]].0[m] == c);
        if is_motif {
            total += 1;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == l {
                return Ok(BigUint::from(total));
            }
            idx[pos] += 1;
            if idx[pos] < pts.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum KeySource {
    Const(u32),
    Var(usize),
}

#[derive(Debug)]
struct Step {
    key: Vec<KeySource>,
    /// `(column, variable)` pairs bound from the chosen point.
    binds: Vec<(usize, usize)>,
    index: HashMap<Vec<u32>, Vec<u32>>,
}

/// A compiled join over one specification and one point set.
///
/// The row order is greedy: the next row is the one with the most cells
/// already determined (constants or variables bound by earlier rows), ties
/// broken by row index.
#[derive(Debug)]
pub struct JoinPlan {
    /// Rows in binding order.
    pub order: Vec<usize>,
    steps: Vec<Step>,
    /// Interned coordinates of every point.
    points: Vec<Vec<u32>>,
    n_vars: usize,
    /// Some constant is absent from its column, so nothing can match.
    impossible: bool,
}

impl JoinPlan {
    pub fn new(spec: &MotifSpec, set: &PointSet) -> Result<Self, DimensionMismatch> {
        check_dim(spec, set)?;
        let p = spec.dim();
        let l = spec.tuple_len();
        let matrix = build_matrix(spec);

        // Intern each column's values.
        let mut dict: Vec<BTreeMap<&crate::value::CoordValue, u32>> = vec![BTreeMap::new(); p];
        let coded: Vec<Vec<u32>> = set
            .iter()
            .map(|pt| {
                pt.coords()
                    .iter()
                    .enumerate()
                    .map(|(m, c)| {
                        let next = dict[m].len() as u32;
                        *dict[m].entry(c).or_insert(next)
                    })
                    .collect()
            })
            .collect();

        let mut impossible = false;
        let mut bound = vec![false; matrix.num_vars()];
        let mut done = vec![false; l];
        let mut order = Vec::with_capacity(l);
        let mut steps = Vec::with_capacity(l);
        for _ in 0..l {
            let known = |i: usize| {
                matrix
                    .row(i)
                    .iter()
                    .filter(|c| match c {
                        Cell::Const(_) => true,
                        Cell::Var(b) => bound[b.0],
                    })
                    .count()
            };
            let row = (0..l)
                .filter(|&i| !done[i])
                .max_by(|&a, &b| known(a).cmp(&known(b)).then(b.cmp(&a)))
                .expect("a row remains");
            done[row] = true;
            order.push(row);

            let mut key = Vec::new();
            let mut key_cols = Vec::new();
            let mut binds = Vec::new();
            for (m, cell) in matrix.row(row).iter().enumerate() {
                match cell {
                    Cell::Const(c) => {
                        key_cols.push(m);
                        match dict[m].get(c) {
                            Some(&code) => key.push(KeySource::Const(code)),
                            None => {
                                impossible = true;
                                key.push(KeySource::Const(u32::MAX));
                            }
                        }
                    }
                    Cell::Var(b) if bound[b.0] => {
                        key_cols.push(m);
                        key.push(KeySource::Var(b.0));
                    }
                    Cell::Var(b) => binds.push((m, b.0)),
                }
            }
            for &(_, v) in &binds {
                bound[v] = true;
            }
            let mut index: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for (k, pt) in coded.iter().enumerate() {
                let projected = key_cols.iter().map(|&m| pt[m]).collect();
                index.entry(projected).or_default().push(k as u32);
            }
            steps.push(Step { key, binds, index });
        }

        Ok(JoinPlan {
            order,
            steps,
            points: coded,
            n_vars: matrix.num_vars(),
            impossible,
        })
    }

    /// Number of candidate points for the first row; the unit of work split
    /// across workers by [`JoinPlan::count_range`].
    pub fn first_level_len(&self) -> usize {
        if self.impossible {
            return 0;
        }
        let key: Vec<u32> = self.steps[0]
            .key
            .iter()
            .map(|k| match k {
                KeySource::Const(c) => *c,
                KeySource::Var(_) => unreachable!("nothing is bound before the first row"),
            })
            .collect();
        self.steps[0].index.get(&key).map_or(0, Vec::len)
    }

    pub fn count(&self) -> BigUint {
        self.count_range(0..self.first_level_len())
    }

    /// Motifs whose first-row point is among the given first-level
    /// candidates. Disjoint ranges give disjoint motif sets.
    pub fn count_range(&self, range: Range<usize>) -> BigUint {
        if self.impossible {
            return BigUint::default();
        }
        let mut vals = vec![u32::MAX; self.n_vars];
        BigUint::from(self.descend(0, &mut vals, Some(range)))
    }

    fn lookup(&self, depth: usize, vals: &[u32]) -> Option<&Vec<u32>> {
        let key: Vec<u32> = self.steps[depth]
            .key
            .iter()
            .map(|k| match *k {
                KeySource::Const(c) => c,
                KeySource::Var(v) => vals[v],
            })
            .collect();
        self.steps[depth].index.get(&key)
    }

    fn descend(&self, depth: usize, vals: &mut [u32], range: Option<Range<usize>>) -> u128 {
        let Some(cands) = self.lookup(depth, vals) else {
            return 0;
        };
        let cands = match range {
            Some(r) => &cands[r.start.min(cands.len())..r.end.min(cands.len())],
            None => &cands[..],
        };
        if depth + 1 == self.steps.len() {
            return cands.len() as u128;
        }
        let step = &self.steps[depth];
        let mut total = 0u128;
        for &k in cands {
            let pt = &self.points[k as usize];
            for &(m, v) in &step.binds {
                vals[v] = pt[m];
            }
            total += self.descend(depth + 1, vals, None);
        }
        total
    }
}

/// Counts motifs by backtracking join. Agrees with [`count_motifs_naive`].
pub fn count_motifs_join(spec: &MotifSpec, set: &PointSet) -> Result<BigUint, DimensionMismatch> {
    Ok(JoinPlan::new(spec, set)?.count())
}

/// Number of points agreeing with `pat` on every non-star entry.
pub fn line_count(set: &PointSet, pat: &Pattern) -> usize {
    set.iter().filter(|p| pat.matches(p)).count()
}
