//! Exact coordinate values.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational used for LP weights and thresholds.
pub type Rational = BigRational;

/// A single exact coordinate of a point.
///
/// Equality is mathematical equality of rationals; the underlying ratio is
/// always kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordValue(Rational);

impl CoordValue {
    pub fn new(value: Rational) -> Self {
        CoordValue(value)
    }

    pub fn integer(n: i64) -> Self {
        CoordValue(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        CoordValue(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }
}

impl From<i64> for CoordValue {
    fn from(n: i64) -> Self {
        CoordValue::integer(n)
    }
}

impl From<Rational> for CoordValue {
    fn from(r: Rational) -> Self {
        CoordValue(r)
    }
}

impl fmt::Display for CoordValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.0, f)
    }
}

impl fmt::Debug for CoordValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `a/b`, or just `a` when the denominator is one.
pub fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders a rational as an exact fraction string.
pub fn rational_string(r: &Rational) -> String {
    struct Show<'a>(&'a Rational);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_rational(self.0, f)
        }
    }
    alloc::format!("{}", Show(r))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseValueError {
    #[error("empty value")]
    Empty,
    #[error("`{0}` is not an integer or a fraction a/b")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
}

impl FromStr for CoordValue {
    type Err = ParseValueError;

    /// Accepts `n`, `-n`, `a/b` and `-a/b` with decimal integers. Whitespace
    /// inside the literal is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseValueError::Empty);
        }
        let malformed = || ParseValueError::Malformed(String::from(s));
        let parse_int = |t: &str, signed: bool| -> Result<BigInt, ParseValueError> {
            let digits = if signed {
                t.strip_prefix('-').unwrap_or(t)
            } else {
                t
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            t.parse::<BigInt>().map_err(|_| malformed())
        };
        match s.split_once('/') {
            None => Ok(CoordValue(Rational::from_integer(parse_int(s, true)?))),
            Some((n, d)) => {
                let numer = parse_int(n, true)?;
                let denom = parse_int(d, false)?;
                if denom.is_zero() {
                    return Err(ParseValueError::ZeroDenominator(String::from(s)));
                }
                Ok(CoordValue(Rational::new(numer, denom)))
            }
        }
    }
}
