//! Exact check of `count <= r^tau` for rational `tau`.

use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive};

use crate::hypergraph::build_hypergraph;
use crate::lp::fractional_transversal;
use crate::points::PointSet;
use crate::spec::MotifSpec;
use crate::value::Rational;
use crate::DimensionMismatch;

/// Outcome of comparing a motif count against `r^tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBoundReport {
    pub count: BigUint,
    pub r: usize,
    pub tau: Rational,
    /// `count^b <= r^a` where `tau = a/b` in lowest terms.
    pub holds: bool,
    /// `count^b == r^a`.
    pub tight: bool,
}

/// Compares `count` with `r^(a/b)` by raising both sides to the `b`-th
/// power. `0^0` is one.
pub fn compare_with_power(count: &BigUint, r: usize, exponent: &Rational) -> Ordering {
    assert!(!exponent.is_negative(), "negative exponent");
    let a = exponent
        .numer()
        .to_u32()
        .expect("exponent numerator fits in u32");
    let b = exponent
        .denom()
        .to_u32()
        .expect("exponent denominator fits in u32");
    let rhs = if a == 0 {
        BigUint::one()
    } else {
        BigUint::from(r).pow(a)
    };
    count.pow(b).cmp(&rhs)
}

/// Packages an already-computed count with the bound comparison.
pub fn bound_report(count: BigUint, r: usize, tau: Rational) -> UpperBoundReport {
    let ord = compare_with_power(&count, r, &tau);
    UpperBoundReport {
        holds: ord.is_le(),
        tight: ord.is_eq(),
        count,
        r,
        tau,
    }
}

/// Counts motifs with the join engine and checks them against `r^tau*`.
pub fn verify_upper_bound(
    spec: &MotifSpec,
    set: &PointSet,
) -> Result<UpperBoundReport, DimensionMismatch> {
    let count = crate::count::count_motifs_join(spec, set)?;
    let (tau, _) = fractional_transversal(&build_hypergraph(spec));
    Ok(bound_report(count, set.len(), tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn power_comparisons() {
        assert_eq!(
            compare_with_power(&64u32.into(), 8, &q(2, 1)),
            Ordering::Equal
        );
        assert_eq!(
            compare_with_power(&20u32.into(), 6, &q(3, 1)),
            Ordering::Less
        );
        // 8^(3/2) = 22.6..: 22 < , 23 >
        assert_eq!(
            compare_with_power(&22u32.into(), 8, &q(3, 2)),
            Ordering::Less
        );
        assert_eq!(
            compare_with_power(&23u32.into(), 8, &q(3, 2)),
            Ordering::Greater
        );
        // 0^0 = 1
        assert_eq!(
            compare_with_power(&1u32.into(), 0, &q(0, 1)),
            Ordering::Equal
        );
        assert_eq!(
            compare_with_power(&0u32.into(), 0, &q(2, 1)),
            Ordering::Equal
        );
    }

    #[test]
    fn report_flags() {
        let r = bound_report(64u32.into(), 8, q(2, 1));
        assert!(r.holds && r.tight);
        let r = bound_report(65u32.into(), 8, q(2, 1));
        assert!(!r.holds);
    }
}
