//! Integer points under the dominance order.
//!
//! Coordinates are 0-based in the API. Human-facing output (CLI, DOT labels)
//! shifts colors to 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^d`. The derived `Ord` is lexicographic and only used for
/// canonical sorting; dominance has its own methods.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// `self <= other` componentwise.
    pub fn le(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self` strictly dominates `other`: larger in every coordinate.
    pub fn strictly_dominates(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a > b)
    }

    /// Equal in coordinate `i`, strictly larger in all others.
    pub fn almost_strictly_dominates(&self, other: &Point, i: usize) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .all(|(j, (a, b))| if j == i { a == b } else { a > b })
    }

    pub fn join(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn scaled(&self, s: i64) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    /// Coordinates `i` with `self_i == other_i`.
    pub fn agreement(&self, other: &Point) -> ColorSet {
        let mut set = ColorSet::EMPTY;
        for (i, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            if a == b {
                set.insert(i);
            }
        }
        set
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point(v.to_vec())
    }
}

fn check_dims(p: &Point, q: &Point) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(())
}

/// `p >= q` componentwise.
pub fn dominates(p: &Point, q: &Point) -> Result<bool> {
    check_dims(p, q)?;
    Ok(q.le(p))
}

pub fn strictly_dominates(p: &Point, q: &Point) -> Result<bool> {
    check_dims(p, q)?;
    Ok(p.strictly_dominates(q))
}

pub fn almost_strictly_dominates(p: &Point, q: &Point, i: usize) -> Result<bool> {
    check_dims(p, q)?;
    if i >= p.dim() {
        return Err(Error::InvalidArgument(format!("coordinate {i} out of range")));
    }
    Ok(p.almost_strictly_dominates(q, i))
}

/// Componentwise maximum of a nonempty family.
pub fn join_all<'a, I: IntoIterator<Item = &'a Point>>(points: I) -> Result<Point> {
    fold(points, Point::join)
}

/// Componentwise minimum of a nonempty family.
pub fn meet_all<'a, I: IntoIterator<Item = &'a Point>>(points: I) -> Result<Point> {
    fold(points, Point::meet)
}

fn fold<'a, I, F>(points: I, f: F) -> Result<Point>
where
    I: IntoIterator<Item = &'a Point>,
    F: Fn(&Point, &Point) -> Point,
{
    let mut it = points.into_iter();
    let mut acc = it.next().ok_or(Error::Empty)?.clone();
    for p in it {
        check_dims(&acc, p)?;
        acc = f(&acc, p);
    }
    Ok(acc)
}

/// A set of coordinate indices (colors), `d <= 32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(pub u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(d: usize) -> ColorSet {
        ColorSet(if d >= 32 { u32::MAX } else { (1u32 << d) - 1 })
    }

    pub fn singleton(i: usize) -> ColorSet {
        ColorSet(1 << i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: ColorSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn minus(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ColorSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}
