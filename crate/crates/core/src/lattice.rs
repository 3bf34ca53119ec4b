//! Exact arithmetic and order structure on lattice points of ℕ^d.
//!
//! `Point` carries the componentwise partial order (`leq`, `join`, `meet`)
//! used for divisibility questions, while `Ord` is the lexicographic order,
//! which is the single canonical ordering for all deterministic output.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of ℕ^d with 64-bit unsigned coordinates.
///
/// Arithmetic is checked: overflow is a hard panic rather than wraparound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<u64>,
}

impl Point {
    pub fn new(coords: Vec<u64>) -> Self {
        assert!(!coords.is_empty(), "points must have dimension >= 1");
        Point { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Point::new(vec![0; dim])
    }

    /// The i-th unit vector (0-based axis).
    pub fn unit(dim: usize, axis: usize) -> Self {
        assert!(axis < dim);
        let mut coords = vec![0; dim];
        coords[axis] = 1;
        Point::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn coord(&self, axis: usize) -> u64 {
        self.coords[axis]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn norm1(&self) -> u64 {
        self.coords
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .expect("coordinate overflow in norm")
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.coords[i] != 0).collect()
    }

    fn check_dim(&self, other: &Point) {
        assert_eq!(
            self.dim(),
            other.dim(),
            "dimension mismatch: {} vs {}",
            self.dim(),
            other.dim()
        );
    }

    /// Componentwise order: true iff `other - self` lies in ℕ^d.
    pub fn leq(&self, other: &Point) -> bool {
        self.check_dim(other);
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Point) -> Point {
        self.check_dim(other);
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Point) -> Point {
        self.check_dim(other);
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Point) -> Point {
        self.check_dim(other);
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a.checked_add(b).expect("coordinate overflow"))
                .collect(),
        )
    }

    /// `self - other`, defined only when `other ≤ self`.
    pub fn checked_sub(&self, other: &Point) -> Option<Point> {
        self.check_dim(other);
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<u64>>>()
            .map(Point::new)
    }

    pub fn scale(&self, k: u64) -> Point {
        Point::new(
            self.coords
                .iter()
                .map(|&c| c.checked_mul(k).expect("coordinate overflow"))
                .collect(),
        )
    }

    pub fn add_unit(&self, axis: usize) -> Point {
        self.add(&Point::unit(self.dim(), axis))
    }

    /// Validate that `self` has the expected dimension.
    pub fn expect_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            })
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u64>> for Point {
    fn from(coords: Vec<u64>) -> Self {
        Point::new(coords)
    }
}

impl From<&[u64]> for Point {
    fn from(coords: &[u64]) -> Self {
        Point::new(coords.to_vec())
    }
}

/// Convenience constructor used pervasively in tests: `pt(&[2, 4])`.
pub fn pt(coords: &[u64]) -> Point {
    Point::from(coords)
}

/// The box ⟦lo, hi⟧ of all points between `lo` and `hi` componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointBox {
    lo: Point,
    hi: Point,
}

impl PointBox {
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        lo.expect_dim(hi.dim())?;
        if !lo.leq(&hi) {
            return Err(Error::InvalidBox);
        }
        Ok(PointBox { lo, hi })
    }

    /// ⟦0, hi⟧.
    pub fn from_origin(hi: Point) -> Self {
        let lo = Point::zero(hi.dim());
        PointBox { lo, hi }
    }

    pub fn lo(&self) -> &Point {
        &self.lo
    }

    pub fn hi(&self) -> &Point {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.lo.leq(p) && p.leq(&self.hi)
    }

    pub fn point_count(&self) -> u64 {
        self.lo
            .coords()
            .iter()
            .zip(self.hi.coords())
            .try_fold(1u64, |acc, (&l, &h)| acc.checked_mul(h - l + 1))
            .expect("box too large to enumerate")
    }

    /// All points of the box exactly once, in lexicographic order.
    pub fn points(&self) -> BoxPoints {
        BoxPoints {
            boxed: self.clone(),
            next: Some(self.lo.clone()),
        }
    }
}

impl fmt::Display for PointBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Lexicographic iterator over the points of a box.
pub struct BoxPoints {
    boxed: PointBox,
    next: Option<Point>,
}

impl Iterator for BoxPoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let current = self.next.take()?;
        // Odometer increment on the last coordinate, carrying leftwards.
        let mut coords = current.coords().to_vec();
        let mut axis = coords.len();
        loop {
            if axis == 0 {
                self.next = None;
                break;
            }
            axis -= 1;
            if coords[axis] < self.boxed.hi.coord(axis) {
                coords[axis] += 1;
                for c in coords.iter_mut().skip(axis + 1) {
                    *c = 0;
                }
                for (i, c) in coords.iter_mut().enumerate() {
                    *c = (*c).max(self.boxed.lo.coord(i));
                }
                self.next = Some(Point::new(coords));
                break;
            }
        }
        Some(current)
    }
}

/// The ≤-minimal elements of a finite set, lexicographically sorted.
///
/// Every input point dominates some output point, and the output is an
/// antichain.
pub fn minimals_of<I: IntoIterator<Item = Point>>(points: I) -> Vec<Point> {
    let mut pts: Vec<Point> = points.into_iter().collect();
    pts.sort();
    pts.dedup();
    let mut out: Vec<Point> = Vec::new();
    for p in &pts {
        if !pts.iter().any(|q| q != p && q.leq(p)) {
            out.push(p.clone());
        }
    }
    out
}
