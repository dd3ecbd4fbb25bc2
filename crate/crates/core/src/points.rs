//! Finite point sets and star patterns.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::value::CoordValue;

/// A point of `Q^p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<CoordValue>);

impl Point {
    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| CoordValue::integer(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[CoordValue] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointSetError {
    #[error("point {index} has {found} coordinates, expected {expected}")]
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {index} duplicates point {first}")]
    Duplicate { index: usize, first: usize },
}

/// A finite set of distinct points of a fixed dimension, kept in insertion
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: Vec::new(),
        }
    }

    /// Duplicates are rejected, not merged. Indices in errors are zero-based.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self, PointSetError> {
        let mut seen = alloc::collections::BTreeMap::new();
        for (index, pt) in points.iter().enumerate() {
            if pt.dim() != dim {
                return Err(PointSetError::WrongLength {
                    index,
                    expected: dim,
                    found: pt.dim(),
                });
            }
            if let Some(&first) = seen.get(pt) {
                return Err(PointSetError::Duplicate { index, first });
            }
            seen.insert(pt, index);
        }
        Ok(PointSet { dim, points })
    }

    /// Builds a set from points that are known to be distinct and of the
    /// right dimension; duplicates are dropped keeping the first occurrence.
    pub fn from_unique(dim: usize, points: impl IntoIterator<Item = Point>) -> Self {
        let mut seen = BTreeSet::new();
        let points = points
            .into_iter()
            .filter(|p| {
                debug_assert_eq!(p.dim(), dim);
                seen.insert(p.clone())
            })
            .collect();
        PointSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    /// Inserts `p` unless already present. Returns whether it was added.
    pub fn insert(&mut self, p: Point) -> bool {
        assert_eq!(p.dim(), self.dim, "point dimension");
        if self.contains(&p) {
            false
        } else {
            self.points.push(p);
            true
        }
    }

    pub fn remove(&mut self, p: &Point) -> bool {
        match self.points.iter().position(|q| q == p) {
            Some(i) => {
                self.points.remove(i);
                true
            }
            None => false,
        }
    }

    /// Same set with points in ascending lexicographic order.
    pub fn sorted(&self) -> PointSet {
        let mut points = self.points.clone();
        points.sort();
        PointSet {
            dim: self.dim,
            points,
        }
    }

    /// Set equality, ignoring order.
    pub fn same_set(&self, other: &PointSet) -> bool {
        self.dim == other.dim && self.sorted().points == other.sorted().points
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = core::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternEntry {
    Value(CoordValue),
    Star,
}

/// A `p`-tuple of values and stars. A star matches any coordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub Vec<PatternEntry>);

impl Pattern {
    pub fn all_stars(dim: usize) -> Self {
        Pattern(alloc::vec![PatternEntry::Star; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn matches(&self, p: &Point) -> bool {
        self.0.len() == p.dim()
            && self.0.iter().zip(p.coords()).all(|(e, c)| match e {
                PatternEntry::Star => true,
                PatternEntry::Value(v) => v == c,
            })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match e {
                PatternEntry::Value(v) => write!(f, "{v}")?,
                PatternEntry::Star => write!(f, "*")?,
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
