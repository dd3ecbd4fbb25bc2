//! Fractional transversals and matchings of a hypergraph.
//!
//! Both programs are solved independently by the exact simplex in
//! [`crate::simplex`]; [`duality_certificate`] checks that the two optima
//! agree and that both certificates are feasible.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::hypergraph::Hypergraph;
use crate::simplex::{maximize, Outcome, Problem, Relation};
use crate::spec::{build_matrix, Cell, MotifSpec};
use crate::value::Rational;

/// Vertex weights `g` with every edge covered at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalTransversal {
    pub g: Vec<Rational>,
    pub weight: Rational,
}

impl FractionalTransversal {
    pub fn is_feasible(&self, h: &Hypergraph) -> bool {
        self.g.len() == h.n_vertices()
            && self.g.iter().all(|v| !v.is_negative())
            && h.edges().iter().all(|e| {
                e.vertices.iter().map(|&x| &self.g[x]).sum::<Rational>() >= Rational::one()
            })
            && self.g.iter().sum::<Rational>() == self.weight
    }
}

/// Edge weights `f` with every vertex loaded at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching {
    pub f: Vec<Rational>,
    pub weight: Rational,
}

impl FractionalMatching {
    /// Total weight on the edges incident to each vertex.
    pub fn loads(&self, h: &Hypergraph) -> Vec<Rational> {
        let mut loads = vec![Rational::zero(); h.n_vertices()];
        for (e, w) in h.edges().iter().zip(&self.f) {
            for &x in &e.vertices {
                loads[x] += w;
            }
        }
        loads
    }

    pub fn is_feasible(&self, h: &Hypergraph) -> bool {
        self.f.len() == h.n_edges()
            && self.f.iter().all(|v| !v.is_negative())
            && self.loads(h).iter().all(|l| *l <= Rational::one())
            && self.f.iter().sum::<Rational>() == self.weight
    }

    /// Least common multiple of the denominators of the positive weights
    /// (one when there are none).
    pub fn common_denominator(&self) -> BigInt {
        self.f
            .iter()
            .filter(|v| v.is_positive())
            .fold(BigInt::one(), |acc, v| {
                num_integer::Integer::lcm(&acc, v.denom())
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("fractional transversal certificate is infeasible")]
    InfeasibleTransversal,
    #[error("fractional matching certificate is infeasible")]
    InfeasibleMatching,
    #[error("duality gap: transversal weight {tau} differs from matching weight {nu}")]
    DualityGap {
        tau: alloc::string::String,
        nu: alloc::string::String,
    },
}

fn one() -> Rational {
    Rational::one()
}

fn transversal_problem(h: &Hypergraph) -> Problem {
    Problem {
        objective: vec![-one(); h.n_vertices()],
        rows: h
            .edges()
            .iter()
            .map(|e| {
                let mut a = vec![Rational::zero(); h.n_vertices()];
                for &x in &e.vertices {
                    a[x] = one();
                }
                (a, Relation::Ge, one())
            })
            .collect(),
    }
}

fn matching_rows(h: &Hypergraph) -> Vec<(Vec<Rational>, Relation, Rational)> {
    h.incidence()
        .into_iter()
        .filter(|inc| !inc.is_empty())
        .map(|inc| {
            let mut a = vec![Rational::zero(); h.n_edges()];
            for k in inc {
                a[k] += one();
            }
            (a, Relation::Le, one())
        })
        .collect()
}

/// Minimum-weight fractional transversal. With no edges the optimum is the
/// zero function.
pub fn fractional_transversal(h: &Hypergraph) -> (Rational, FractionalTransversal) {
    if h.n_edges() == 0 {
        let g = vec![Rational::zero(); h.n_vertices()];
        return (
            Rational::zero(),
            FractionalTransversal {
                g,
                weight: Rational::zero(),
            },
        );
    }
    match maximize(&transversal_problem(h)) {
        Outcome::Optimal { value, x } => {
            let tau = -value;
            (tau.clone(), FractionalTransversal { g: x, weight: tau })
        }
        // g = 1 is feasible and the objective is bounded by zero.
        other => unreachable!("transversal program: {other:?}"),
    }
}

/// Maximum-weight fractional matching at a vertex of the matching polytope.
pub fn fractional_matching(h: &Hypergraph) -> (Rational, FractionalMatching) {
    if h.n_edges() == 0 {
        return (
            Rational::zero(),
            FractionalMatching {
                f: Vec::new(),
                weight: Rational::zero(),
            },
        );
    }
    let problem = Problem {
        objective: vec![one(); h.n_edges()],
        rows: matching_rows(h),
    };
    match maximize(&problem) {
        Outcome::Optimal { value, x } => (
            value.clone(),
            FractionalMatching {
                f: x,
                weight: value,
            },
        ),
        // y = 0 is feasible and nonempty edges bound every y_e by one.
        other => unreachable!("matching program: {other:?}"),
    }
}

/// An optimal matching whose support is as large as possible.
///
/// For every edge an optimal matching maximizing that edge's weight is
/// found; the result is their average. It is optimal by convexity and puts
/// positive weight on every edge that is positive in some optimal matching.
/// On symmetric hypergraphs such as `K_4` this recovers the uniform
/// matching, which a single simplex vertex cannot.
pub fn balanced_matching(h: &Hypergraph) -> (Rational, FractionalMatching) {
    let (nu, _) = fractional_matching(h);
    if h.n_edges() == 0 {
        return (
            nu.clone(),
            FractionalMatching {
                f: Vec::new(),
                weight: nu,
            },
        );
    }
    let mut rows = matching_rows(h);
    rows.push((vec![one(); h.n_edges()], Relation::Eq, nu.clone()));
    let mut sum = vec![Rational::zero(); h.n_edges()];
    for k in 0..h.n_edges() {
        let mut objective = vec![Rational::zero(); h.n_edges()];
        objective[k] = one();
        let problem = Problem {
            objective,
            rows: rows.clone(),
        };
        match maximize(&problem) {
            Outcome::Optimal { x, .. } => {
                for (s, v) in sum.iter_mut().zip(x) {
                    *s += v;
                }
            }
            other => unreachable!("restricted matching program: {other:?}"),
        }
    }
    let count = Rational::from_integer(BigInt::from(h.n_edges()));
    let f: Vec<Rational> = sum.into_iter().map(|s| s / &count).collect();
    (nu.clone(), FractionalMatching { f, weight: nu })
}

/// Both optima with their certificates, checked against each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityCertificate {
    pub tau: Rational,
    pub transversal: FractionalTransversal,
    pub nu: Rational,
    pub matching: FractionalMatching,
}

pub fn duality_certificate(h: &Hypergraph) -> Result<DualityCertificate, LpError> {
    let (tau, transversal) = fractional_transversal(h);
    let (nu, matching) = fractional_matching(h);
    if !transversal.is_feasible(h) {
        return Err(LpError::InfeasibleTransversal);
    }
    if !matching.is_feasible(h) {
        return Err(LpError::InfeasibleMatching);
    }
    if tau != nu {
        return Err(LpError::DualityGap {
            tau: crate::value::rational_string(&tau),
            nu: crate::value::rational_string(&nu),
        });
    }
    Ok(DualityCertificate {
        tau,
        transversal,
        nu,
        matching,
    })
}

/// Number of distinct rows once every variable is replaced by a symbol for
/// the matching weight of its edge. `f` must be indexed by block id, i.e.
/// computed on the (non-deduplicated) hypergraph of `spec`.
pub fn distinct_tableau_rows(spec: &MotifSpec, f: &FractionalMatching) -> usize {
    assert_eq!(
        f.f.len(),
        spec.num_blocks(),
        "matching is not over this spec"
    );
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Symbol<'a> {
        Weight(&'a Rational),
        Const(&'a crate::value::CoordValue),
    }
    let matrix = build_matrix(spec);
    let rows: BTreeSet<Vec<Symbol<'_>>> = matrix
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| match cell {
                    Cell::Var(b) => Symbol::Weight(&f.f[b.0]),
                    Cell::Const(c) => Symbol::Const(c),
                })
                .collect()
        })
        .collect();
    rows.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_hypergraph, Edge};
    use crate::spec::{validate_spec, BlockId, RawSpec};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn spec(l: usize, partitions: Vec<Vec<Vec<usize>>>) -> MotifSpec {
        validate_spec(&RawSpec {
            l,
            p: partitions.len(),
            partitions,
            constants: Vec::new(),
        })
        .unwrap()
    }

    fn k4() -> MotifSpec {
        spec(
            4,
            vec![
                vec![vec![1, 3], vec![2, 4]],
                vec![vec![1, 4], vec![2, 3]],
                vec![vec![1, 2], vec![3, 4]],
            ],
        )
    }

    fn corner() -> MotifSpec {
        spec(
            3,
            vec![
                vec![vec![1, 2], vec![3]],
                vec![vec![1, 3], vec![2]],
                vec![vec![1], vec![2, 3]],
            ],
        )
    }

    #[test]
    fn k4_optima() {
        let h = build_hypergraph(&k4());
        let cert = duality_certificate(&h).unwrap();
        assert_eq!(cert.tau, q(2, 1));
        assert_eq!(cert.nu, q(2, 1));
        // The uniform certificates have the same weight and are feasible.
        let g_half = FractionalTransversal {
            g: vec![q(1, 2); 4],
            weight: q(2, 1),
        };
        assert!(g_half.is_feasible(&h));
        let f_third = FractionalMatching {
            f: vec![q(1, 3); 6],
            weight: q(2, 1),
        };
        assert!(f_third.is_feasible(&h));
    }

    #[test]
    fn balanced_matching_on_k4_is_uniform() {
        let h = build_hypergraph(&k4());
        let (nu, f) = balanced_matching(&h);
        assert_eq!(nu, q(2, 1));
        assert_eq!(f.f, vec![q(1, 3); 6]);
        assert_eq!(f.common_denominator(), BigInt::from(3));
        assert!(f.is_feasible(&h));
    }

    #[test]
    fn single_edge() {
        let h = build_hypergraph(&spec(1, vec![vec![vec![1]]]));
        let (nu, f) = fractional_matching(&h);
        assert_eq!(nu, q(1, 1));
        assert_eq!(f.f, vec![q(1, 1)]);
        let (tau, g) = fractional_transversal(&h);
        assert_eq!(tau, q(1, 1));
        assert_eq!(g.g, vec![q(1, 1)]);
    }

    #[test]
    fn corner_spec_optima() {
        let h = build_hypergraph(&corner());
        let (tau, g) = fractional_transversal(&h);
        assert_eq!(tau, q(3, 1));
        assert_eq!(g.g, vec![q(1, 1); 3]);
        let (nu, f) = fractional_matching(&h);
        assert_eq!(nu, q(3, 1));
        // edges: {1,2},{3},{1,3},{2},{1},{2,3}
        assert_eq!(
            f.f,
            vec![q(0, 1), q(1, 1), q(0, 1), q(1, 1), q(1, 1), q(0, 1)]
        );
        assert_eq!(balanced_matching(&h).1, f);
    }

    #[test]
    fn empty_hypergraph_has_zero_optima() {
        let h = Hypergraph::new(2, Vec::new());
        let cert = duality_certificate(&h).unwrap();
        assert!(cert.tau.is_zero() && cert.nu.is_zero());
        assert_eq!(cert.transversal.g, vec![q(0, 1); 2]);
        assert!(balanced_matching(&h).1.f.is_empty());
    }

    #[test]
    fn uniform_spec_optimum_is_l_over_n() {
        // L=6, n=3, two coordinates.
        let s = spec(
            6,
            vec![
                vec![vec![1, 2, 3], vec![4, 5, 6]],
                vec![vec![1, 4, 5], vec![2, 3, 6]],
            ],
        );
        let cert = duality_certificate(&build_hypergraph(&s)).unwrap();
        assert_eq!(cert.tau, q(2, 1));
    }

    #[test]
    fn dedup_preserves_optima() {
        let s = spec(
            3,
            vec![
                vec![vec![1, 2], vec![3]],
                vec![vec![2, 1], vec![3]],
                vec![vec![1, 3], vec![2]],
            ],
        );
        let h = build_hypergraph(&s);
        let a = duality_certificate(&h).unwrap();
        let b = duality_certificate(&h.dedup()).unwrap();
        assert_eq!(a.tau, b.tau);
        assert_eq!(a.nu, b.nu);
    }

    #[test]
    fn tableau_rows() {
        let s = k4();
        let f = FractionalMatching {
            f: vec![q(1, 3); 6],
            weight: q(2, 1),
        };
        assert_eq!(distinct_tableau_rows(&s, &f), 1);

        let c = corner();
        let (_, f) = fractional_matching(&build_hypergraph(&c));
        assert_eq!(distinct_tableau_rows(&c, &f), 3);

        let single = spec(1, vec![vec![vec![1]]]);
        let (_, f) = fractional_matching(&build_hypergraph(&single));
        assert_eq!(distinct_tableau_rows(&single, &f), 1);
    }

    #[test]
    fn tableau_rows_keep_constants_apart() {
        let s = validate_spec(&RawSpec {
            l: 2,
            p: 2,
            partitions: vec![vec![vec![1, 2]], vec![]],
            constants: vec![
                (1, 2, crate::value::CoordValue::integer(0)),
                (2, 2, crate::value::CoordValue::integer(1)),
            ],
        })
        .unwrap();
        let (_, f) = fractional_matching(&build_hypergraph(&s));
        assert_eq!(distinct_tableau_rows(&s, &f), 2);
    }

    #[test]
    fn unit_weight_hypergraph_handles_isolated_vertices() {
        let h = Hypergraph::new(
            3,
            vec![Edge {
                vertices: vec![0, 1],
                origins: vec![(0, BlockId(0))],
            }],
        );
        let cert = duality_certificate(&h).unwrap();
        assert_eq!(cert.nu, q(1, 1));
        assert_eq!(cert.transversal.g[2], q(0, 1));
    }
}
