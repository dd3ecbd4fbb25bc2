//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Only used for the small programs attached to a hypergraph; there is no
//! sparse storage and reduced costs are recomputed every iteration.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::value::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Ge,
    Eq,
}

/// `maximize objective . x` subject to `rows`, `x >= 0`.
#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<Rational>, Relation, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    coeffs: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    enterable: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.coeffs[row][col].clone();
        for v in self.coeffs[row].iter_mut() {
            *v = &*v / &piv;
        }
        self.rhs[row] = &self.rhs[row] / &piv;
        let pivot_row = self.coeffs[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.coeffs.len() {
            if r == row || self.coeffs[r][col].is_zero() {
                continue;
            }
            let factor = self.coeffs[r][col].clone();
            for (v, p) in self.coeffs[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            self.rhs[r] -= &factor * &pivot_rhs;
        }
        self.basis[row] = col;
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Runs primal simplex for `maximize cost . x`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational]) -> bool {
        let ncols = cost.len();
        loop {
            let entering = (0..ncols).find(|&j| {
                if !self.enterable[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    let a = &self.coeffs[r][j];
                    if !a.is_zero() && !cost[b].is_zero() {
                        reduced -= &cost[b] * a;
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.coeffs.len() {
                let a = &self.coeffs[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leaving {
                    None => true,
                    Some((best_r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_r])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

pub(crate) fn maximize(problem: &Problem) -> Outcome {
    let n = problem.objective.len();
    let m = problem.rows.len();

    // Normalize to nonnegative right-hand sides.
    let rows: Vec<(Vec<Rational>, Relation, Rational)> = problem
        .rows
        .iter()
        .map(|(a, rel, b)| {
            debug_assert_eq!(a.len(), n);
            if b.is_negative() {
                let flipped = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (a.iter().map(|v| -v).collect(), flipped, -b)
            } else {
                (a.clone(), *rel, b.clone())
            }
        })
        .collect();

    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let ncols = n + n_slack + n_art;

    let mut coeffs = vec![vec![Rational::zero(); ncols]; m];
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut slack, mut art) = (n, n + n_slack);
    for (r, (a, rel, b)) in rows.iter().enumerate() {
        coeffs[r][..n].clone_from_slice(a);
        rhs.push(b.clone());
        match rel {
            Relation::Le => {
                coeffs[r][slack] = Rational::from_integer(1.into());
                basis.push(slack);
                slack += 1;
            }
            Relation::Ge => {
                coeffs[r][slack] = Rational::from_integer((-1).into());
                coeffs[r][art] = Rational::from_integer(1.into());
                basis.push(art);
                slack += 1;
                art += 1;
            }
            Relation::Eq => {
                coeffs[r][art] = Rational::from_integer(1.into());
                basis.push(art);
                art += 1;
            }
        }
    }

    let mut tab = Tableau {
        coeffs,
        rhs,
        basis,
        enterable: vec![true; ncols],
    };

    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); ncols];
        for c in phase1.iter_mut().skip(n + n_slack) {
            *c = Rational::from_integer((-1).into());
        }
        // Phase one is bounded above by zero.
        tab.optimize(&phase1);
        if tab.value(&phase1).is_negative() {
            return Outcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.basis.len() {
            if tab.basis[r] >= n + n_slack {
                match (0..n + n_slack).find(|&j| !tab.coeffs[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        tab.coeffs.remove(r);
                        tab.rhs.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for e in tab.enterable.iter_mut().skip(n + n_slack) {
            *e = false;
        }
    }

    let mut cost = vec![Rational::zero(); ncols];
    cost[..n].clone_from_slice(&problem.objective);
    if !tab.optimize(&cost) {
        return Outcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (&b, v) in tab.basis.iter().zip(&tab.rhs) {
        if b < n {
            x[b] = v.clone();
        }
    }
    Outcome::Optimal {
        value: tab.value(&cost),
        x,
    }
}
