//! Ideal extensions S = {0} ∪ (ℳ + ℕ^d) of the free commutative monoid,
//! described by the finite antichain ℳ of minimal nonzero elements.

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::lattice::{minimals_of, Point, PointBox};
use serde::Serialize;
use std::collections::BTreeSet;

/// Shared query surface of the monoid families handled by the invariant
/// engine. Membership is exact; `atoms_in_box` returns exactly the atoms of
/// the monoid that lie in the box, lexicographically sorted.
pub trait Monoid {
    fn dim(&self) -> usize;
    fn contains(&self, x: &Point) -> bool;
    fn atoms_in_box(&self, b: &PointBox) -> Vec<Point>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealExtension {
    dim: usize,
    minimals: Vec<Point>,
    /// Antichain of pairwise sums of minimals: x ∈ 2ℳ + ℕ^d iff some entry
    /// is below x.
    two_minimals: Vec<Point>,
}

impl IdealExtension {
    /// Build from a generating set; dominated generators are dropped and
    /// returned alongside the monoid.
    pub fn from_generators(
        dim: usize,
        generators: Vec<Point>,
    ) -> Result<(Self, Vec<Point>)> {
        if generators.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        for g in &generators {
            g.expect_dim(dim)?;
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let minimals = minimals_of(generators.clone());
        let mut dropped: Vec<Point> = generators
            .into_iter()
            .filter(|g| minimals.binary_search(g).is_err())
            .collect();
        dropped.sort();
        dropped.dedup();
        let mut pair_sums = Vec::new();
        for (i, m) in minimals.iter().enumerate() {
            for n in &minimals[i..] {
                pair_sums.push(m.add(n));
            }
        }
        let two_minimals = minimals_of(pair_sums);
        Ok((
            IdealExtension {
                dim,
                minimals,
                two_minimals,
            },
            dropped,
        ))
    }

    pub fn new(dim: usize, generators: Vec<Point>) -> Result<Self> {
        Ok(Self::from_generators(dim, generators)?.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// ℳ(S), lexicographically sorted.
    pub fn minimals(&self) -> &[Point] {
        &self.minimals
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.is_zero() || self.in_ideal(x)
    }

    /// x ∈ ℳ + ℕ^d, i.e. x ∈ S \ {0}.
    pub fn in_ideal(&self, x: &Point) -> bool {
        self.minimals.iter().any(|m| m.leq(x))
    }

    /// x ∈ 2ℳ + ℕ^d, i.e. x is a sum of two nonzero members plus a shift.
    pub fn in_two_ideal(&self, x: &Point) -> bool {
        self.two_minimals.iter().any(|m| m.leq(x))
    }

    pub fn is_atom(&self, x: &Point) -> bool {
        self.in_ideal(x) && !self.in_two_ideal(x)
    }

    /// Per-axis thresholds c_i = min{k : k·e_i ∈ S}; infinite when no
    /// minimal is supported on axis i alone.
    pub fn axis_thresholds(&self) -> Vec<ExtNat> {
        (0..self.dim)
            .map(|axis| {
                self.minimals
                    .iter()
                    .filter(|m| m.support() == [axis])
                    .map(|m| m.coord(axis))
                    .min()
                    .map_or(ExtNat::Infinity, ExtNat::Finite)
            })
            .collect()
    }

    /// The gap set ℕ^d \ S. Finite iff every axis threshold is finite, in
    /// which case all gaps lie in the box ⟦0, c−1⟧.
    pub fn gaps(&self) -> GapReport {
        let thresholds = self.axis_thresholds();
        let infinite_axes: Vec<usize> = thresholds
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_finite())
            .map(|(i, _)| i + 1)
            .collect();
        if !infinite_axes.is_empty() {
            return GapReport {
                finiteness: GapFiniteness::InfiniteAlongAxes(infinite_axes),
                gaps: Vec::new(),
                axis_thresholds: thresholds,
            };
        }
        let hi = Point::new(
            thresholds
                .iter()
                .map(|c| c.finite().unwrap() - 1)
                .collect(),
        );
        let gaps = PointBox::from_origin(hi)
            .points()
            .filter(|p| !self.contains(p))
            .collect();
        GapReport {
            finiteness: GapFiniteness::Finite,
            gaps,
            axis_thresholds: thresholds,
        }
    }

    /// The gap list, requiring finiteness.
    pub fn gap_points(&self) -> Result<Vec<Point>> {
        let report = self.gaps();
        match report.finiteness {
            GapFiniteness::Finite => Ok(report.gaps),
            GapFiniteness::InfiniteAlongAxes(_) => Err(Error::InfiniteGaps),
        }
    }

    /// The full atom set 𝒜(S) = S* \ (S* + S*), defined only when the gap
    /// set is finite.
    ///
    /// Enumeration runs over the candidate set ℳ + ({0} ∪ ℋ): if a is an
    /// atom and m ∈ ℳ lies below it, then a − m cannot be in S* (otherwise
    /// a = m + (a − m) splits a), so a − m ∈ {0} ∪ ℋ. A candidate is kept
    /// iff it fails the 2ℳ + ℕ^d test.
    pub fn atoms(&self) -> Result<Vec<Point>> {
        let gaps = self.gap_points().map_err(|_| Error::InfinitelyManyAtoms)?;
        let mut atoms = BTreeSet::new();
        let zero = Point::zero(self.dim);
        for m in &self.minimals {
            for shift in std::iter::once(&zero).chain(gaps.iter()) {
                let candidate = m.add(shift);
                if !self.in_two_ideal(&candidate) {
                    atoms.insert(candidate);
                }
            }
        }
        Ok(atoms.into_iter().collect())
    }

    /// Atoms inside a box; well-defined even when the gap set (and hence the
    /// atom set) is infinite.
    pub fn atoms_in_box(&self, b: &PointBox) -> Vec<Point> {
        b.points()
            .filter(|p| self.in_ideal(p) && !self.in_two_ideal(p))
            .collect()
    }

    /// Minimal elements with singleton support.
    pub fn extreme_rays(&self) -> Vec<Point> {
        self.minimals
            .iter()
            .filter(|m| m.support().len() == 1)
            .cloned()
            .collect()
    }

    /// Split off the axes whose unit vector lies in S. The remaining
    /// minimals, re-indexed to the remaining axes, form the core.
    pub fn core(&self) -> CoreDecomposition {
        let unit_axes: Vec<usize> = (0..self.dim)
            .filter(|&i| {
                self.minimals
                    .iter()
                    .any(|m| *m == Point::unit(self.dim, i))
            })
            .collect();
        let core_axes: Vec<usize> = (0..self.dim)
            .filter(|i| !unit_axes.contains(i))
            .collect();
        let core_minimals: Vec<Point> = self
            .minimals
            .iter()
            .filter(|m| {
                m.support()
                    .iter()
                    .all(|axis| core_axes.contains(axis))
            })
            .map(|m| project(m, &core_axes))
            .collect();
        let core = if core_axes.is_empty() || core_minimals.is_empty() {
            None
        } else {
            Some(
                IdealExtension::new(core_axes.len(), core_minimals)
                    .expect("core minimals are nonzero"),
            )
        };
        CoreDecomposition {
            unit_axes,
            core_axes,
            core,
        }
    }

    /// Exact gap-absorption check: every sum of two gaps landing in S, and
    /// every gap-plus-atom sum, must be an atom or a sum of two atoms.
    pub fn is_gap_absorbing(&self) -> Result<GaCheck> {
        let gaps = self.gap_points().map_err(|_| Error::NeedsBoundedMode)?;
        let atoms = self.atoms()?;
        Ok(self.ga_check_on(&gaps, &atoms, &atoms, false))
    }

    /// Box-relative gap-absorption check: the gap and atom pairs are drawn
    /// from `b`, while membership in 𝒜 ∪ 2𝒜 is decided exactly (the split
    /// atoms of any tested sum live inside the doubled box). A violation
    /// reported here is therefore a genuine violation.
    pub fn is_gap_absorbing_in_box(&self, b: &PointBox) -> GaCheck {
        let gaps: Vec<Point> = b
            .points()
            .filter(|p| !p.is_zero() && !self.contains(p))
            .collect();
        let atoms = self.atoms_in_box(b);
        let doubled = PointBox::from_origin(b.hi().scale(2));
        let split_atoms = self.atoms_in_box(&doubled);
        self.ga_check_on(&gaps, &atoms, &split_atoms, true)
    }

    fn ga_check_on(
        &self,
        gaps: &[Point],
        atoms: &[Point],
        split_atoms: &[Point],
        box_relative: bool,
    ) -> GaCheck {
        let in_two_atoms = |x: &Point| -> bool {
            split_atoms.iter().any(|a| {
                a.leq(x)
                    && x.checked_sub(a)
                        .is_some_and(|rest| self.is_atom(&rest))
            })
        };
        let in_atoms_or_two = |x: &Point| -> bool {
            if self.is_atom(x) {
                return true;
            }
            in_two_atoms(x)
        };
        for (i, h1) in gaps.iter().enumerate() {
            for h2 in &gaps[i..] {
                let sum = h1.add(h2);
                if self.contains(&sum) && !in_atoms_or_two(&sum) {
                    return GaCheck {
                        holds: false,
                        box_relative,
                        witness: Some(GaWitness::GapPlusGap {
                            h1: h1.clone(),
                            h2: h2.clone(),
                            sum,
                        }),
                    };
                }
            }
        }
        for h in gaps {
            for a in atoms {
                let sum = h.add(a);
                if !in_atoms_or_two(&sum) {
                    return GaCheck {
                        holds: false,
                        box_relative,
                        witness: Some(GaWitness::GapPlusAtom {
                            gap: h.clone(),
                            atom: a.clone(),
                            sum,
                        }),
                    };
                }
            }
        }
        GaCheck {
            holds: true,
            box_relative,
            witness: None,
        }
    }

    /// Exact check that 2𝒜(S) is closed under intervals.
    pub fn two_atoms_interval_check(&self) -> Result<IntervalCheck> {
        let atoms = self.atoms().map_err(|_| Error::NeedsBoundedMode)?;
        Ok(interval_closure_check(
            &pairwise_sums(&atoms),
            self.dim,
            false,
        ))
    }

    /// Box-relative variant over the atoms found inside `b`.
    pub fn two_atoms_interval_check_in_box(&self, b: &PointBox) -> IntervalCheck {
        let atoms = self.atoms_in_box(b);
        let sums: Vec<Point> = pairwise_sums(&atoms)
            .into_iter()
            .filter(|s| b.contains(s))
            .collect();
        interval_closure_check(&sums, self.dim, true)
    }
}

impl Monoid for IdealExtension {
    fn dim(&self) -> usize {
        self.dim
    }

    fn contains(&self, x: &Point) -> bool {
        IdealExtension::contains(self, x)
    }

    fn atoms_in_box(&self, b: &PointBox) -> Vec<Point> {
        IdealExtension::atoms_in_box(self, b)
    }
}

/// All pairwise sums a + b (a, b atoms, possibly equal), deduplicated.
pub fn pairwise_sums(atoms: &[Point]) -> Vec<Point> {
    let mut sums = BTreeSet::new();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i..] {
            sums.insert(a.add(b));
        }
    }
    sums.into_iter().collect()
}

/// Check that a finite point set is closed under intervals: no x outside the
/// set may be sandwiched between two members. Runs a dominance sweep over the
/// bounding box rather than testing all pairs.
pub fn interval_closure_check(set: &[Point], dim: usize, box_relative: bool) -> IntervalCheck {
    let members: BTreeSet<&Point> = set.iter().collect();
    if members.len() <= 1 {
        return IntervalCheck {
            holds: true,
            box_relative,
            witness: None,
        };
    }
    let hi = set
        .iter()
        .fold(Point::zero(dim), |acc, p| acc.join(p));
    let bbox = PointBox::from_origin(hi.clone());
    let strides = {
        let mut s = vec![1u64; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * (hi.coord(i + 1) + 1);
        }
        s
    };
    let index = |p: &Point| -> usize {
        p.coords()
            .iter()
            .zip(&strides)
            .map(|(&c, &s)| (c * s) as usize)
            .sum()
    };
    let total = bbox.point_count() as usize;
    let mut is_member = vec![false; total];
    for p in set {
        is_member[index(p)] = true;
    }
    // below[x]: some member lies componentwise below x (sweep upward).
    let mut below = is_member.clone();
    for p in bbox.points() {
        let i = index(&p);
        if below[i] {
            continue;
        }
        below[i] = (0..dim).any(|axis| {
            p.coord(axis) > 0 && below[i - strides[axis] as usize]
        });
    }
    // above[x]: some member lies componentwise above x (sweep downward).
    let mut above = is_member.clone();
    let all_points: Vec<Point> = bbox.points().collect();
    for p in all_points.iter().rev() {
        let i = index(p);
        if above[i] {
            continue;
        }
        above[i] = (0..dim).any(|axis| {
            p.coord(axis) < hi.coord(axis) && above[i + strides[axis] as usize]
        });
    }
    for p in &all_points {
        let i = index(p);
        if !is_member[i] && below[i] && above[i] {
            let lower = set.iter().find(|m| m.leq(p)).unwrap().clone();
            let upper = set.iter().find(|m| p.leq(m)).unwrap().clone();
            return IntervalCheck {
                holds: false,
                box_relative,
                witness: Some((lower, p.clone(), upper)),
            };
        }
    }
    IntervalCheck {
        holds: true,
        box_relative,
        witness: None,
    }
}

/// Restrict a point to the given axes (in order).
pub fn project(p: &Point, axes: &[usize]) -> Point {
    Point::new(axes.iter().map(|&i| p.coord(i)).collect())
}

/// Place a point over `axes` back into a full-dimensional ambient space.
pub fn embed(p: &Point, axes: &[usize], dim: usize) -> Point {
    let mut coords = vec![0; dim];
    for (k, &axis) in axes.iter().enumerate() {
        coords[axis] = p.coord(k);
    }
    Point::new(coords)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub finiteness: GapFiniteness,
    /// Lexicographically sorted gap list; empty when infinite.
    pub gaps: Vec<Point>,
    /// c_i per axis, in axis order.
    pub axis_thresholds: Vec<ExtNat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "axes", rename_all = "snake_case")]
pub enum GapFiniteness {
    Finite,
    /// 1-based axis indices along which pure-axis points are never members.
    InfiniteAlongAxes(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaCheck {
    pub holds: bool,
    pub box_relative: bool,
    pub witness: Option<GaWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum GaWitness {
    /// A sum of two gaps that lies in S but is not in 𝒜 ∪ 2𝒜.
    GapPlusGap { h1: Point, h2: Point, sum: Point },
    /// A gap-plus-atom sum that is not in 𝒜 ∪ 2𝒜.
    GapPlusAtom { gap: Point, atom: Point, sum: Point },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalCheck {
    pub holds: bool,
    pub box_relative: bool,
    /// (u, x, v) with u ≤ x ≤ v, u and v in the set, x outside it.
    pub witness: Option<(Point, Point, Point)>,
}

#[derive(Debug, Clone)]
pub struct CoreDecomposition {
    /// Axes l with e_l minimal (0-based).
    pub unit_axes: Vec<usize>,
    /// The remaining axes, in order; the core lives over these.
    pub core_axes: Vec<usize>,
    /// The core as an ideal extension over `core_axes`; `None` when the core
    /// is the trivial monoid {0}.
    pub core: Option<IdealExtension>,
}
