//! Column profiles of two-dimensional ideal extensions.
//!
//! Fix one coordinate as the height. For each base value v, `pi1[v]` is the
//! least height t with (v, t) in ℳ + ℕ², and `pi2[v]` the least height with
//! (v, t) in 2ℳ + ℕ². The gap, atom, and two-atom columns of the monoid are
//! read off these two profiles.

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::lattice::Point;
use crate::monoid::IdealExtension;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiProfile {
    /// The height coordinate, 1-based (1 or 2).
    pub axis: usize,
    /// Profiles over base values v = 0..=v_max.
    pub v_max: u64,
    pub pi1: Vec<ExtNat>,
    pub pi2: Vec<ExtNat>,
    /// Base values v in range with pi1 finite and pi2 nonzero; always an
    /// integer interval.
    pub a_values: Vec<u64>,
}

impl PiProfile {
    /// Compute both profiles for `monoid` with the given height axis.
    pub fn compute(monoid: &IdealExtension, axis: usize, v_max: u64) -> Result<PiProfile> {
        if monoid.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                got: monoid.dim(),
            });
        }
        if axis != 1 && axis != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                got: axis,
            });
        }
        let height = axis - 1;
        let base = 1 - height;
        let minimals = monoid.minimals();
        let pi1: Vec<ExtNat> = (0..=v_max)
            .map(|v| {
                minimals
                    .iter()
                    .filter(|m| m.coord(base) <= v)
                    .map(|m| m.coord(height))
                    .min()
                    .map_or(ExtNat::Infinity, ExtNat::Finite)
            })
            .collect();
        let pi2: Vec<ExtNat> = (0..=v_max)
            .map(|v| {
                let mut best = ExtNat::Infinity;
                for m in minimals {
                    for n in minimals {
                        if m.coord(base) + n.coord(base) <= v {
                            best = best.min(ExtNat::Finite(m.coord(height) + n.coord(height)));
                        }
                    }
                }
                best
            })
            .collect();
        let a_values = (0..=v_max)
            .filter(|&v| {
                pi1[v as usize].is_finite() && pi2[v as usize] != ExtNat::Finite(0)
            })
            .collect();
        Ok(PiProfile {
            axis,
            v_max,
            pi1,
            pi2,
            a_values,
        })
    }

    fn point(&self, v: u64, t: u64) -> Point {
        if self.axis == 2 {
            Point::new(vec![v, t])
        } else {
            Point::new(vec![t, v])
        }
    }

    /// The gaps in the covered columns: (v, t) with t < pi1[v], excluding 0.
    pub fn gap_columns(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for v in 0..=self.v_max {
            if let ExtNat::Finite(p1) = self.pi1[v as usize] {
                for t in 0..p1 {
                    let p = self.point(v, t);
                    if !p.is_zero() {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The atoms in the covered columns: (v, t) with v in A and
    /// pi1[v] <= t < pi2[v].
    pub fn atom_columns(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for &v in &self.a_values {
            let ExtNat::Finite(p1) = self.pi1[v as usize] else {
                continue;
            };
            match self.pi2[v as usize] {
                ExtNat::Finite(p2) => {
                    for t in p1..p2 {
                        out.push(self.point(v, t));
                    }
                }
                ExtNat::Infinity => {
                    // Unbounded atom column; the caller gets the in-range
                    // part only, which cannot happen when gaps are finite.
                    continue;
                }
            }
        }
        out.sort();
        out
    }

    /// The two-atom column over z: when z is a sum of two A-values, the
    /// interval [m_z, M_z] of heights t with (z, t) a sum of two atoms.
    /// M_z is infinite when some contributing column is unbounded.
    pub fn two_atom_column(&self, z: u64) -> Option<(u64, ExtNat)> {
        let splits: Vec<u64> = self
            .a_values
            .iter()
            .copied()
            .filter(|&v| v <= z && self.a_values.contains(&(z - v)))
            .collect();
        if splits.is_empty() {
            return None;
        }
        let mut low = u64::MAX;
        let mut high = ExtNat::Finite(0);
        for &v in &splits {
            let p1 = |v: u64| self.pi1[v as usize].finite().expect("A-values have finite pi1");
            low = low.min(p1(v) + p1(z - v));
            let top = match (self.pi2[v as usize], self.pi2[(z - v) as usize]) {
                // Both nonzero on A, so the sum is at least 2.
                (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b - 2),
                _ => ExtNat::Infinity,
            };
            high = high.max(top);
        }
        Some((low, high))
    }
}
