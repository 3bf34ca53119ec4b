//! Monoid-level factorization invariants: Betti elements, catenary degree,
//! delta sets, and omega-primality.

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Reported};
use crate::factor::{distance, r_classes, AtomBasis, Factorization};
use crate::lattice::{Point, PointBox};
use crate::monoid::{embed, pairwise_sums, IdealExtension, Monoid};
use std::collections::{BTreeMap, BTreeSet};

/// The graph G_s on the atoms below s (edges where two atoms fit into s
/// simultaneously). s is a Betti element iff the graph is disconnected.
#[derive(Debug, Clone)]
pub struct BettiGraph {
    pub element: Point,
    pub vertices: Vec<Point>,
    /// Index pairs (i, j), i < j.
    pub edges: Vec<(usize, usize)>,
    /// Connected components as sorted vertex-index lists, ordered by their
    /// smallest member.
    pub components: Vec<Vec<usize>>,
}

impl BettiGraph {
    pub fn is_betti(&self) -> bool {
        self.components.len() >= 2
    }
}

/// Build G_s using the monoid membership oracle.
pub fn betti_graph(monoid: &dyn Monoid, s: &Point) -> Result<BettiGraph> {
    if s.is_zero() || !monoid.contains(s) {
        return Err(Error::NotMember);
    }
    let vertices: Vec<Point> = monoid
        .atoms_in_box(&PointBox::from_origin(s.clone()))
        .into_iter()
        .filter(|a| {
            s.checked_sub(a)
                .is_some_and(|rest| monoid.contains(&rest))
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let pair = vertices[i].add(&vertices[j]);
            if s.checked_sub(&pair)
                .is_some_and(|rest| monoid.contains(&rest))
            {
                edges.push((i, j));
            }
        }
    }
    let mut dsu = Dsu::new(vertices.len());
    for &(i, j) in &edges {
        dsu.union(i, j);
    }
    let components = dsu.components();
    Ok(BettiGraph {
        element: s.clone(),
        vertices,
        edges,
        components,
    })
}

/// Disconnection test with early exit; equivalent to
/// `betti_graph(..)?.is_betti()` but without materializing the edge list.
pub fn is_betti_element(monoid: &dyn Monoid, s: &Point) -> Result<bool> {
    if s.is_zero() || !monoid.contains(s) {
        return Err(Error::NotMember);
    }
    let vertices: Vec<Point> = monoid
        .atoms_in_box(&PointBox::from_origin(s.clone()))
        .into_iter()
        .filter(|a| {
            s.checked_sub(a)
                .is_some_and(|rest| monoid.contains(&rest))
        })
        .collect();
    if vertices.len() <= 1 {
        return Ok(false);
    }
    let mut dsu = Dsu::new(vertices.len());
    let mut components = vertices.len();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if dsu.find(i) == dsu.find(j) {
                continue;
            }
            let pair = vertices[i].add(&vertices[j]);
            if s.checked_sub(&pair)
                .is_some_and(|rest| monoid.contains(&rest))
            {
                dsu.union(i, j);
                components -= 1;
                if components == 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(components >= 2)
}

/// Completeness of a Betti element listing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    BoxRelative,
}

#[derive(Debug, Clone)]
pub struct BettiList {
    pub elements: Vec<Point>,
    pub completeness: Completeness,
}

/// The complete Betti element set of a finite-gap ideal extension, available
/// once gap absorption has been verified (Betti elements are then sums of at
/// most three atoms; in dimension two, exactly the two-atom sums with more
/// than one factorization).
pub fn betti_elements(s: &IdealExtension) -> Result<BettiList> {
    let ga = s
        .is_gap_absorbing()
        .map_err(|_| Error::NotVerifiedGapAbsorbing)?;
    if !ga.holds {
        return Err(Error::NotVerifiedGapAbsorbing);
    }
    let atoms = s.atoms()?;
    let elements = if s.dim() == 2 {
        let basis = AtomBasis::new(s.dim(), atoms.clone())?;
        pairwise_sums(&atoms)
            .into_iter()
            .filter(|cand| count_factorizations_up_to(&basis, cand, 2) >= 2)
            .collect()
    } else {
        let two = pairwise_sums(&atoms);
        let mut candidates: BTreeSet<Point> = two.iter().cloned().collect();
        for t in &two {
            for a in &atoms {
                candidates.insert(t.add(a));
            }
        }
        candidates
            .into_iter()
            .filter(|cand| is_betti_element(s, cand).unwrap_or(false))
            .collect()
    };
    Ok(BettiList {
        elements,
        completeness: Completeness::Complete,
    })
}

/// All Betti elements inside a box, for any monoid with a membership oracle.
pub fn betti_in_box(monoid: &dyn Monoid, b: &PointBox) -> BettiList {
    let elements = b
        .points()
        .filter(|p| !p.is_zero() && monoid.contains(p))
        .filter(|p| is_betti_element(monoid, p).unwrap_or(false))
        .collect();
    BettiList {
        elements,
        completeness: Completeness::BoxRelative,
    }
}

/// Betti elements assembled from the core decomposition: unit-axis sums with
/// core atoms and gaps, plus the Betti elements of the core itself. Used as
/// a cross-check against the direct scan.
pub fn betti_core_decomposition(s: &IdealExtension) -> Result<Vec<Point>> {
    let decomposition = s.core();
    if decomposition.unit_axes.is_empty() {
        return Err(Error::EmptyL);
    }
    let dim = s.dim();
    let gaps = s.gap_points()?;
    let core_axes = &decomposition.core_axes;
    let minimal_set: BTreeSet<&Point> = s.minimals().iter().collect();
    let core_atoms: Vec<Point> = match &decomposition.core {
        Some(core) => core
            .atoms()?
            .iter()
            .map(|a| embed(a, core_axes, dim))
            .collect(),
        None => Vec::new(),
    };
    let core_units: Vec<Point> = core_axes
        .iter()
        .map(|&j| Point::unit(dim, j))
        .collect();

    let mut out: BTreeSet<Point> = BTreeSet::new();
    for &l in &decomposition.unit_axes {
        let unit = Point::unit(dim, l);
        // B1: unit + non-minimal core atom.
        for a in &core_atoms {
            if !minimal_set.contains(a) {
                out.insert(unit.add(a));
            }
        }
        // B2: 2·unit + gap, excluding core unit vectors.
        for h in &gaps {
            if !core_units.contains(h) {
                out.insert(unit.scale(2).add(h));
            }
        }
        // B3: unit + gap + core atom.
        for h in &gaps {
            for a in &core_atoms {
                out.insert(unit.add(h).add(a));
            }
        }
    }
    // B4: sums of two unit-plus-gap atoms.
    for &l in &decomposition.unit_axes {
        for &k in &decomposition.unit_axes {
            for h1 in &gaps {
                for h2 in &gaps {
                    out.insert(
                        Point::unit(dim, l)
                            .add(h1)
                            .add(&Point::unit(dim, k))
                            .add(h2),
                    );
                }
            }
        }
    }
    if let Some(core) = &decomposition.core {
        for b in betti_elements(core)?.elements {
            out.insert(embed(&b, core_axes, dim));
        }
    }
    Ok(out.into_iter().collect())
}

fn count_factorizations_up_to(basis: &AtomBasis, s: &Point, limit: usize) -> usize {
    basis.count_factorizations_up_to(s, limit)
}

/// Catenary degree of an element: 0 for at most one factorization, else the
/// bottleneck edge weight connecting all factorizations under the distance
/// metric (ascending-weight union-find).
pub fn catenary_elem(monoid: &dyn Monoid, s: &Point) -> Result<u64> {
    let zs = factorizations_of(monoid, s);
    if zs.is_empty() && !s.is_zero() {
        return Err(Error::NoFactorization);
    }
    if zs.len() <= 1 {
        return Ok(0);
    }
    let mut weighted: Vec<(u64, usize, usize)> = Vec::new();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            weighted.push((distance(&zs[i], &zs[j])?, i, j));
        }
    }
    weighted.sort();
    let mut dsu = Dsu::new(zs.len());
    let mut components = zs.len();
    for (w, i, j) in weighted {
        if dsu.union(i, j) {
            components -= 1;
            if components == 1 {
                return Ok(w);
            }
        }
    }
    unreachable!("complete graph always connects")
}

/// The R-class formula: max over R-classes of the minimal length in the
/// class. Only defined when there are at least two classes; used as a
/// cross-check for `catenary_elem` on Betti elements.
pub fn catenary_rclass_formula(monoid: &dyn Monoid, s: &Point) -> Result<u64> {
    let zs = factorizations_of(monoid, s);
    let classes = r_classes(&zs);
    if classes.len() < 2 {
        return Err(Error::SingleRClass);
    }
    Ok(classes
        .iter()
        .map(|class| class.iter().map(|&i| zs[i].length()).min().unwrap())
        .max()
        .unwrap())
}

/// Factorizations of s over the atoms below it.
pub fn factorizations_of(monoid: &dyn Monoid, s: &Point) -> Vec<Factorization> {
    let atoms = monoid.atoms_in_box(&PointBox::from_origin(s.clone()));
    match AtomBasis::new(monoid.dim(), atoms) {
        Ok(basis) => basis.factorizations(s),
        Err(_) => Vec::new(),
    }
}

/// Length set of s over the atoms below it.
pub fn lengths_of(monoid: &dyn Monoid, s: &Point) -> BTreeSet<u64> {
    let atoms = monoid.atoms_in_box(&PointBox::from_origin(s.clone()));
    match AtomBasis::new(monoid.dim(), atoms) {
        Ok(basis) => basis.lengths(s),
        Err(_) => BTreeSet::new(),
    }
}

/// Max of `catenary_elem` over the given Betti elements (0 when empty).
pub fn catenary_over(monoid: &dyn Monoid, betti: &[Point]) -> Result<u64> {
    let mut best = 0;
    for b in betti {
        best = best.max(catenary_elem(monoid, b)?);
    }
    Ok(best)
}

/// Union of element delta sets over the given Betti elements.
pub fn delta_over(monoid: &dyn Monoid, betti: &[Point]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for b in betti {
        let lengths: Vec<u64> = lengths_of(monoid, b).into_iter().collect();
        for w in lengths.windows(2) {
            out.insert(w[1] - w[0]);
        }
    }
    out
}

/// Monoid-level catenary degree via the complete Betti set (exact) for a
/// verified gap absorbing ideal extension.
pub fn catenary_monoid(s: &IdealExtension) -> Result<Reported<u64>> {
    let betti = betti_elements(s)?;
    Ok(Reported::Exact(catenary_over(s, &betti.elements)?))
}

/// Box-relative catenary lower bound via the Betti elements found in a box.
pub fn catenary_in_box(monoid: &dyn Monoid, b: &PointBox) -> Result<Reported<u64>> {
    let betti = betti_in_box(monoid, b);
    Ok(Reported::BoxRelative(catenary_over(
        monoid,
        &betti.elements,
    )?))
}

/// Monoid-level delta set via the complete Betti set.
pub fn delta_monoid(s: &IdealExtension) -> Result<Reported<BTreeSet<u64>>> {
    let betti = betti_elements(s)?;
    Ok(Reported::Exact(delta_over(s, &betti.elements)))
}

/// Box-relative delta set over the Betti elements found in a box.
pub fn delta_in_box(monoid: &dyn Monoid, b: &PointBox) -> Reported<BTreeSet<u64>> {
    let betti = betti_in_box(monoid, b);
    Reported::BoxRelative(delta_over(monoid, &betti.elements))
}

/// Result of an omega-primality computation.
#[derive(Debug, Clone)]
pub struct OmegaResult {
    pub value: ExtNat,
    pub lower_bound: ExtNat,
    pub upper_bound: ExtNat,
    /// Minimal covers attaining the maximum, as exponent vectors over the
    /// monoid's sorted atom list.
    pub witnesses: Vec<Factorization>,
}

/// Omega-primality of an element of a finite-gap ideal extension.
///
/// Enumerates minimal covers ("bullets"): atom multisets x with
/// φ(x) − s ∈ S such that removing any single atom breaks coverage. The
/// search walks multisets with non-decreasing atom index and increasing
/// length, never extending a cover, and is capped at ‖s‖₁ + 1: a minimal
/// cover longer than that would contain a strictly smaller cover of length
/// at most ‖s‖₁ + 1, contradicting minimality. (The atom-count bound uses
/// only the ideal property, so it applies to every nonzero member, not just
/// atoms.) Minimality of each recorded bullet is re-verified by explicit
/// single-atom removal.
pub fn omega_elem(s: &IdealExtension, elem: &Point, cap: Option<u64>) -> Result<OmegaResult> {
    omega_elem_limited(s, elem, cap, u64::MAX)
        .map(|result| result.expect("unlimited search always completes"))
}

/// `omega_elem` with a node budget for the cover search; returns `Ok(None)`
/// when the budget is exhausted before the search completes.
pub fn omega_elem_limited(
    s: &IdealExtension,
    elem: &Point,
    cap: Option<u64>,
    node_limit: u64,
) -> Result<Option<OmegaResult>> {
    if elem.is_zero() || !s.contains(elem) {
        return Err(Error::NotMember);
    }
    let atoms = s.atoms().map_err(|_| Error::InfiniteGaps)?;
    let hard_cap = elem.norm1() + 1;
    let effective_cap = cap.map_or(hard_cap, |c| c.min(hard_cap));
    // suffix_max[i][k]: largest k-th coordinate among atoms[i..].
    let dim = s.dim();
    let mut suffix_max = vec![vec![0u64; dim]; atoms.len() + 1];
    for i in (0..atoms.len()).rev() {
        let next = suffix_max[i + 1].clone();
        for (k, slot) in suffix_max[i].iter_mut().enumerate() {
            *slot = next[k].max(atoms[i].coord(k));
        }
    }

    struct Search<'a> {
        atoms: &'a [Point],
        suffix_max: &'a [Vec<u64>],
        elem: &'a Point,
        monoid: &'a IdealExtension,
        cap: u64,
        hard_cap: u64,
        truncated: bool,
        best: u64,
        witnesses: Vec<BTreeMap<usize, u64>>,
        nodes: u64,
        node_limit: u64,
        aborted: bool,
    }

    impl Search<'_> {
        fn covered(&self, sum: &Point) -> bool {
            sum.checked_sub(self.elem)
                .is_some_and(|rest| self.monoid.contains(&rest))
        }

        fn run(&mut self, start: usize, sum: Point, len: u64, stack: &mut Vec<(usize, u64)>) {
            if self.aborted {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.node_limit {
                self.aborted = true;
                return;
            }
            if self.covered(&sum) {
                let minimal = stack.iter().all(|&(idx, _)| {
                    let reduced = sum
                        .checked_sub(&self.atoms[idx])
                        .expect("stack atoms are part of sum");
                    !self.covered(&reduced)
                });
                if minimal {
                    if len > self.best {
                        self.best = len;
                        self.witnesses.clear();
                    }
                    if len == self.best {
                        self.witnesses.push(stack.iter().copied().collect());
                    }
                }
                return;
            }
            if len == self.cap {
                if self.cap < self.hard_cap {
                    self.truncated = true;
                }
                return;
            }
            // Reachability prune: remaining picks (non-decreasing index)
            // must be able to close the componentwise deficit.
            let budget = self.cap - len;
            for k in 0..self.elem.dim() {
                let deficit = self.elem.coord(k).saturating_sub(sum.coord(k));
                if deficit == 0 {
                    continue;
                }
                let supply = self.suffix_max[start][k];
                if supply == 0 {
                    // No later atom touches this axis: no extension covers.
                    return;
                }
                if deficit.div_ceil(supply) > budget {
                    // Covers may exist beyond the cap, so flag user caps.
                    if self.cap < self.hard_cap {
                        self.truncated = true;
                    }
                    return;
                }
            }
            for idx in start..self.atoms.len() {
                let next = sum.add(&self.atoms[idx]);
                match stack.last_mut() {
                    Some(top) if top.0 == idx => top.1 += 1,
                    _ => stack.push((idx, 1)),
                }
                self.run(idx, next, len + 1, stack);
                let top = stack.last_mut().unwrap();
                if top.1 == 1 {
                    stack.pop();
                } else {
                    top.1 -= 1;
                }
            }
        }
    }

    let mut search = Search {
        atoms: &atoms,
        suffix_max: &suffix_max,
        elem,
        monoid: s,
        cap: effective_cap,
        hard_cap,
        truncated: false,
        best: 0,
        witnesses: Vec::new(),
        nodes: 0,
        node_limit,
        aborted: false,
    };
    search.run(0, Point::zero(s.dim()), 0, &mut Vec::new());
    if search.aborted {
        return Ok(None);
    }
    if search.truncated {
        return Err(Error::CapExceeded {
            cap: effective_cap,
            lower_bound: search.best,
        });
    }
    let witnesses = search
        .witnesses
        .into_iter()
        .map(|exponents| Factorization::from_exponents(atoms.len(), exponents))
        .collect();
    let (lower, upper) = if s.is_atom(elem) {
        let (l, u) = omega_bounds(s, elem)?;
        (ExtNat::Finite(l), ExtNat::Finite(u))
    } else {
        (ExtNat::Finite(1), ExtNat::Finite(hard_cap))
    };
    Ok(Some(OmegaResult {
        value: ExtNat::Finite(search.best),
        lower_bound: lower,
        upper_bound: upper,
        witnesses,
    }))
}

/// Bounds on ω(a) for an atom a: the lower bound ‖a‖₁ applies when some
/// minimal element has support disjoint from a; the upper bound is always
/// ‖a‖₁ + 1.
pub fn omega_bounds(s: &IdealExtension, a: &Point) -> Result<(u64, u64)> {
    if !s.is_atom(a) {
        return Err(Error::NotAtom);
    }
    let disjoint = s
        .minimals()
        .iter()
        .any(|m| a.meet(m).is_zero());
    let lower = if disjoint { a.norm1() } else { 1 };
    Ok((lower, a.norm1() + 1))
}

#[derive(Debug, Clone)]
pub struct OmegaMonoidResult {
    pub value: ExtNat,
    pub lower_bound: ExtNat,
    pub upper_bound: ExtNat,
    /// A maximal atom attaining the value, when finite.
    pub attained_at: Option<Point>,
    /// 1-based axis witnessing infinitude, when infinite.
    pub infinite_axis: Option<usize>,
}

/// ω(S): infinite iff the gap set is infinite; otherwise the maximum of
/// ω(a) over the ≤-maximal atoms (ω is non-decreasing along ≤ on atoms).
pub fn omega_monoid(s: &IdealExtension) -> Result<OmegaMonoidResult> {
    let report = s.gaps();
    if let crate::monoid::GapFiniteness::InfiniteAlongAxes(axes) = &report.finiteness {
        return Ok(OmegaMonoidResult {
            value: ExtNat::Infinity,
            lower_bound: ExtNat::Infinity,
            upper_bound: ExtNat::Infinity,
            attained_at: None,
            infinite_axis: axes.first().copied(),
        });
    }
    let atoms = s.atoms()?;
    let maximal: Vec<&Point> = atoms
        .iter()
        .filter(|a| !atoms.iter().any(|b| *a != b && a.leq(b)))
        .collect();
    let mut best = 0;
    let mut attained = None;
    for a in maximal {
        let result = omega_elem(s, a, None)?;
        let value = result.value.finite().expect("finite search");
        if value > best {
            best = value;
            attained = Some(a.clone());
        }
    }
    let rays = s.extreme_rays();
    let lower = if rays.len() >= 2 {
        rays.iter().map(|r| 2 * r.norm1() - 1).max().unwrap()
    } else {
        1
    };
    let upper = 1 + atoms.iter().map(Point::norm1).max().unwrap_or(0);
    Ok(OmegaMonoidResult {
        value: ExtNat::Finite(best),
        lower_bound: ExtNat::Finite(lower),
        upper_bound: ExtNat::Finite(upper),
        attained_at: attained,
        infinite_axis: None,
    })
}

/// Constructive form of the domination extraction: given a ≤ Σ parts, return
/// indices J with |J| ≤ ‖a‖₁ and a ≤ Σ_{j∈J} parts[j].
///
/// Greedy: each unit of `a` is charged to a part that can still supply that
/// coordinate; a part is selected at most once per charge that needs a new
/// supplier, so at most ‖a‖₁ parts are selected.
pub fn dominating_subset(a: &Point, parts: &[Point]) -> Option<Vec<usize>> {
    let total = parts
        .iter()
        .fold(Point::zero(a.dim()), |acc, p| acc.add(p));
    if !a.leq(&total) {
        return None;
    }
    let mut need = a.coords().to_vec();
    let mut capacity: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    while let Some(axis) = (0..a.dim()).find(|&k| need[k] > 0) {
        let supplier = capacity
            .iter()
            .find(|(_, cap)| cap[axis] > 0)
            .map(|(&j, _)| j)
            .or_else(|| {
                parts.iter().enumerate().position(|(j, p)| {
                    !capacity.contains_key(&j) && p.coord(axis) > 0
                })
            });
        let j = supplier.expect("total dominates a, so a supplier exists");
        let cap = capacity
            .entry(j)
            .or_insert_with(|| parts[j].coords().to_vec());
        cap[axis] -= 1;
        need[axis] -= 1;
    }
    Some(capacity.into_keys().collect())
}

/// Exhaustive verification of the unique-factorization classification on a
/// finite-gap ideal extension: two-atom sums split by core membership, and
/// minimum-length-3 members of the core within `l3_box`.
#[derive(Debug, Clone, Default)]
pub struct UniquenessReport {
    pub mismatches: Vec<UniquenessMismatch>,
    pub checked_core_pairs: usize,
    pub checked_outside_pairs: usize,
    pub checked_length_three: usize,
}

#[derive(Debug, Clone)]
pub struct UniquenessMismatch {
    pub element: Point,
    pub rule: &'static str,
    pub unique: bool,
    pub shape_matches: bool,
}

pub fn unique_factorization_predicates(
    s: &IdealExtension,
    l3_box: &PointBox,
) -> Result<UniquenessReport> {
    let atoms = s.atoms()?;
    let basis = AtomBasis::new(s.dim(), atoms.clone())?;
    let decomposition = s.core();
    let unit_axes = &decomposition.unit_axes;
    let core_axes = &decomposition.core_axes;
    let in_core =
        |x: &Point| -> bool { x.support().iter().all(|axis| core_axes.contains(axis)) };
    let core_minimals: Vec<&Point> = s.minimals().iter().filter(|m| in_core(m)).collect();
    let mut report = UniquenessReport::default();

    for cand in pairwise_sums(&atoms) {
        let unique = count_factorizations_up_to(&basis, &cand, 2) == 1;
        if in_core(&cand) {
            // Unique two-atom core sums are minimal pairs or 2m + e_i.
            report.checked_core_pairs += 1;
            if unique {
                let minimal_pair = core_minimals.iter().any(|m1| {
                    cand.checked_sub(m1)
                        .is_some_and(|rest| core_minimals.iter().any(|m2| rest == **m2))
                });
                let doubled = core_minimals.iter().any(|m| {
                    cand.checked_sub(&m.scale(2)).is_some_and(|rest| {
                        rest.norm1() == 1 && rest.support().iter().all(|ax| core_axes.contains(ax))
                    })
                });
                if !(minimal_pair || doubled) {
                    report.mismatches.push(UniquenessMismatch {
                        element: cand.clone(),
                        rule: "unique core two-atom sums are m1+m2 or 2m+e_i",
                        unique,
                        shape_matches: false,
                    });
                }
            }
        } else {
            // Outside the core the classification is exact: unique iff
            // e_l + m or 2 e_l + e_j.
            report.checked_outside_pairs += 1;
            let unit_plus_minimal = unit_axes.iter().any(|&l| {
                cand.checked_sub(&Point::unit(s.dim(), l))
                    .is_some_and(|rest| s.minimals().contains(&rest))
            });
            let doubled_unit = unit_axes.iter().any(|&l| {
                cand.checked_sub(&Point::unit(s.dim(), l).scale(2))
                    .is_some_and(|rest| {
                        rest.norm1() == 1
                            && rest.support().iter().all(|ax| core_axes.contains(ax))
                    })
            });
            let shape = unit_plus_minimal || doubled_unit;
            if unique != shape {
                report.mismatches.push(UniquenessMismatch {
                    element: cand.clone(),
                    rule: "outside the core, unique iff e_l+m or 2e_l+e_j",
                    unique,
                    shape_matches: shape,
                });
            }
        }
    }

    // Minimum length >= 3 in the core: unique iff 7 e_i with 2 e_i minimal.
    for p in l3_box.points() {
        if p.is_zero() || !s.contains(&p) || !in_core(&p) {
            continue;
        }
        let lengths = basis.lengths(&p);
        let Some(&ell) = lengths.iter().next() else {
            continue;
        };
        if ell < 3 {
            continue;
        }
        report.checked_length_three += 1;
        let unique = count_factorizations_up_to(&basis, &p, 2) == 1;
        let shape = (0..s.dim()).any(|i| {
            core_axes.contains(&i)
                && p == Point::unit(s.dim(), i).scale(7)
                && s.contains(&Point::unit(s.dim(), i).scale(2))
        });
        if unique != shape {
            report.mismatches.push(UniquenessMismatch {
                element: p.clone(),
                rule: "in the core with min length >= 3, unique iff 7e_i with 2e_i minimal",
                unique,
                shape_matches: shape,
            });
        }
    }
    Ok(report)
}

/// Aggregate invariant report for a finite-gap, verified gap absorbing
/// ideal extension.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub atom_count: usize,
    pub gap_count: usize,
    pub betti: Vec<Point>,
    pub catenary: Reported<u64>,
    pub delta: Reported<BTreeSet<u64>>,
    pub omega: ExtNat,
}

pub fn invariant_report(s: &IdealExtension) -> Result<InvariantReport> {
    let betti = betti_elements(s)?;
    Ok(InvariantReport {
        atom_count: s.atoms()?.len(),
        gap_count: s.gap_points()?.len(),
        catenary: Reported::Exact(catenary_over(s, &betti.elements)?),
        delta: Reported::Exact(delta_over(s, &betti.elements)),
        omega: omega_monoid(s)?.value,
        betti: betti.elements,
    })
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            self.parent[i] = self.find(self.parent[i]);
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) -> bool {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri == rj {
            return false;
        }
        self.parent[ri.max(rj)] = ri.min(rj);
        true
    }

    fn components(&mut self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let root = self.find(i);
            map.entry(root).or_default().push(i);
        }
        map.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::AtomSetMonoid;
    use crate::lattice::pt;

    fn e1() -> IdealExtension {
        IdealExtension::new(2, vec![pt(&[2, 0]), pt(&[1, 2]), pt(&[0, 3])]).unwrap()
    }

    fn e2() -> IdealExtension {
        IdealExtension::new(2, vec![pt(&[2, 0]), pt(&[0, 3])]).unwrap()
    }

    fn e3() -> AtomSetMonoid {
        let atoms = PointBox::new(pt(&[20, 3]), pt(&[23, 4]))
            .unwrap()
            .points()
            .collect();
        AtomSetMonoid::new(AtomBasis::new(2, atoms).unwrap())
    }

    fn e4() -> IdealExtension {
        IdealExtension::new(2, vec![pt(&[0, 1])]).unwrap()
    }

    #[test]
    fn betti_graph_of_2_4_in_e1() {
        let s = e1();
        let graph = betti_graph(&s, &pt(&[2, 4])).unwrap();
        let expected_vertices =
            vec![pt(&[0, 3]), pt(&[0, 4]), pt(&[1, 2]), pt(&[2, 0]), pt(&[2, 1])];
        assert_eq!(graph.vertices, expected_vertices);
        assert_eq!(graph.components.len(), 3);
        assert!(graph.is_betti());
    }

    #[test]
    fn betti_graph_of_atom_is_connected() {
        let s = e1();
        let graph = betti_graph(&s, &pt(&[1, 2])).unwrap();
        assert_eq!(graph.vertices, vec![pt(&[1, 2])]);
        assert!(!graph.is_betti());
    }

    #[test]
    fn betti_graph_of_161_28_has_two_components() {
        let m = e3();
        let graph = betti_graph(&m, &pt(&[161, 28])).unwrap();
        assert_eq!(graph.components.len(), 2);
    }

    #[test]
    fn betti_graph_rejects_non_members() {
        assert_eq!(
            betti_graph(&e1(), &pt(&[1, 1])).unwrap_err(),
            Error::NotMember
        );
        assert_eq!(
            betti_graph(&e1(), &Point::zero(2)).unwrap_err(),
            Error::NotMember
        );
    }

    #[test]
    fn betti_elements_of_e1_contains_2_4() {
        let betti = betti_elements(&e1()).unwrap();
        assert_eq!(betti.completeness, Completeness::Complete);
        assert!(betti.elements.contains(&pt(&[2, 4])));
        // Every element reported really has a disconnected graph.
        for b in &betti.elements {
            assert!(is_betti_element(&e1(), b).unwrap());
        }
    }

    #[test]
    fn betti_elements_of_free_monoid_is_empty() {
        let s = IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert!(betti_elements(&s).unwrap().elements.is_empty());
        let s3 =
            IdealExtension::new(3, vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert!(betti_elements(&s3).unwrap().elements.is_empty());
    }

    #[test]
    fn betti_elements_needs_finite_gaps() {
        assert_eq!(
            betti_elements(&e4()).unwrap_err(),
            Error::NotVerifiedGapAbsorbing
        );
    }

    #[test]
    fn betti_in_box_for_infinite_gap_monoid() {
        let s = e4();
        let betti = betti_in_box(&s, &PointBox::from_origin(pt(&[6, 3])));
        assert_eq!(betti.completeness, Completeness::BoxRelative);
        assert!(betti.elements.contains(&pt(&[4, 2])));
        // All Betti elements of this monoid sit on the second row.
        assert!(betti.elements.iter().all(|b| b.coord(1) == 2));
    }

    #[test]
    fn factorizations_of_4_2_include_the_two_listed() {
        let s = e4();
        let zs = factorizations_of(&s, &pt(&[4, 2]));
        assert_eq!(zs.len(), 3, "(0,1)+(4,1), (1,1)+(3,1), 2(2,1)");
        let atoms = s.atoms_in_box(&PointBox::from_origin(pt(&[4, 2])));
        let as_multisets: Vec<Vec<(Point, u64)>> = zs
            .iter()
            .map(|z| {
                z.exponents()
                    .iter()
                    .map(|(&i, &c)| (atoms[i].clone(), c))
                    .collect()
            })
            .collect();
        assert!(as_multisets.contains(&vec![(pt(&[2, 1]), 2)]));
        assert!(as_multisets.contains(&vec![(pt(&[1, 1]), 1), (pt(&[3, 1]), 1)]));
    }

    #[test]
    fn betti_core_decomposition_matches_direct_scan() {
        let s = IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 3])]).unwrap();
        let direct = betti_elements(&s).unwrap().elements;
        let assembled = betti_core_decomposition(&s).unwrap();
        assert_eq!(assembled, direct);
    }

    #[test]
    fn betti_core_decomposition_brute_forced_instance() {
        let s = IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 2])]).unwrap();
        let assembled = betti_core_decomposition(&s).unwrap();
        assert_eq!(
            assembled,
            vec![pt(&[0, 6]), pt(&[1, 3]), pt(&[1, 4]), pt(&[2, 2])]
        );
        assert_eq!(assembled, betti_elements(&s).unwrap().elements);
    }

    #[test]
    fn betti_core_decomposition_free_monoid() {
        let s = IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert!(betti_core_decomposition(&s).unwrap().is_empty());
    }

    #[test]
    fn betti_core_decomposition_requires_unit_minimal() {
        assert_eq!(betti_core_decomposition(&e2()).unwrap_err(), Error::EmptyL);
    }

    #[test]
    fn catenary_examples() {
        assert_eq!(catenary_elem(&e4(), &pt(&[4, 2])).unwrap(), 2);
        assert_eq!(catenary_elem(&e3(), &pt(&[161, 28])).unwrap(), 8);
        // Unique factorization: degenerate value 0.
        assert_eq!(catenary_elem(&e1(), &pt(&[1, 2])).unwrap(), 0);
    }

    #[test]
    fn catenary_rclass_formula_examples() {
        assert_eq!(
            catenary_rclass_formula(&e3(), &pt(&[161, 28])).unwrap(),
            8
        );
        assert_eq!(catenary_rclass_formula(&e1(), &pt(&[2, 4])).unwrap(), 2);
        assert_eq!(catenary_rclass_formula(&e4(), &pt(&[4, 2])).unwrap(), 2);
        assert_eq!(
            catenary_rclass_formula(&e1(), &pt(&[1, 2])).unwrap_err(),
            Error::SingleRClass
        );
    }

    #[test]
    fn catenary_monoid_examples() {
        let free = IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(catenary_monoid(&free).unwrap(), Reported::Exact(0));

        let c = catenary_monoid(&e2()).unwrap();
        let value = *c.value().unwrap();
        assert!(value <= 3, "dimension-two catenary bound");
        assert!(value >= 2);

        let boxed = catenary_in_box(&e4(), &PointBox::from_origin(pt(&[6, 3]))).unwrap();
        assert_eq!(boxed, Reported::BoxRelative(2));
    }

    #[test]
    fn delta_examples() {
        let half_factorial = delta_in_box(&e4(), &PointBox::from_origin(pt(&[6, 3])));
        assert_eq!(half_factorial, Reported::BoxRelative(BTreeSet::new()));

        let d = delta_monoid(&e2()).unwrap();
        assert!(d.value().unwrap().iter().all(|&gap| gap == 1));
    }

    #[test]
    fn omega_elem_examples() {
        let s = e2();
        let w = omega_elem(&s, &pt(&[3, 2]), None).unwrap();
        assert_eq!(w.value, ExtNat::Finite(4));
        let w = omega_elem(&s, &pt(&[1, 5]), None).unwrap();
        assert_eq!(w.value, ExtNat::Finite(5));
        assert!(!w.witnesses.is_empty());

        let free = IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        let w = omega_elem(&free, &pt(&[1, 0]), None).unwrap();
        assert_eq!(w.value, ExtNat::Finite(1), "free monoid atoms are prime");
    }

    #[test]
    fn omega_witnesses_are_minimal_covers() {
        let s = e2();
        let atoms = s.atoms().unwrap();
        let w = omega_elem(&s, &pt(&[3, 2]), None).unwrap();
        for witness in &w.witnesses {
            assert_eq!(witness.length(), 4);
            let total = witness
                .exponents()
                .iter()
                .fold(Point::zero(2), |acc, (&i, &c)| acc.add(&atoms[i].scale(c)));
            let rest = total.checked_sub(&pt(&[3, 2])).unwrap();
            assert!(s.contains(&rest));
            for &i in witness.exponents().keys() {
                let reduced = total.checked_sub(&atoms[i]).unwrap();
                let still_covers = reduced
                    .checked_sub(&pt(&[3, 2]))
                    .is_some_and(|r| s.contains(&r));
                assert!(!still_covers, "removing an atom must break coverage");
            }
        }
    }

    #[test]
    fn omega_cap_reports_lower_bound() {
        let s = e2();
        let err = omega_elem(&s, &pt(&[1, 5]), Some(3)).unwrap_err();
        match err {
            Error::CapExceeded { cap, lower_bound } => {
                assert_eq!(cap, 3);
                assert!(lower_bound <= 5);
            }
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn omega_bounds_examples() {
        let s = e2();
        assert_eq!(omega_bounds(&s, &pt(&[3, 2])).unwrap(), (1, 6));
        assert_eq!(omega_bounds(&s, &pt(&[3, 0])).unwrap(), (3, 4));
        assert_eq!(omega_bounds(&s, &pt(&[1, 1])).unwrap_err(), Error::NotAtom);
    }

    #[test]
    fn omega_monoid_examples() {
        let result = omega_monoid(&e2()).unwrap();
        assert_eq!(result.value, ExtNat::Finite(5));
        assert_eq!(result.attained_at, Some(pt(&[1, 5])));
        assert_eq!(result.lower_bound, ExtNat::Finite(5), "extreme rays (2,0),(0,3)");
        assert_eq!(result.upper_bound, ExtNat::Finite(7));

        let result = omega_monoid(&e4()).unwrap();
        assert_eq!(result.value, ExtNat::Infinity);
        assert_eq!(result.infinite_axis, Some(1));
    }

    #[test]
    fn dominating_subset_properties() {
        let a = pt(&[2, 1]);
        let parts = vec![pt(&[1, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[5, 5])];
        let subset = dominating_subset(&a, &parts).unwrap();
        assert!(subset.len() as u64 <= a.norm1());
        let total = subset
            .iter()
            .fold(Point::zero(2), |acc, &j| acc.add(&parts[j]));
        assert!(a.leq(&total));

        assert!(dominating_subset(&pt(&[9, 9]), &parts).is_none());
    }

    #[test]
    fn uniqueness_classification_holds_on_samples() {
        let boxed = PointBox::from_origin(pt(&[9, 9]));
        for s in [
            e1(),
            e2(),
            IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 3])]).unwrap(),
            IdealExtension::new(2, vec![pt(&[1, 0]), pt(&[0, 2])]).unwrap(),
        ] {
            let report = unique_factorization_predicates(&s, &boxed).unwrap();
            assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
        }
    }

    #[test]
    fn seven_fold_axis_is_unique_when_doubled_unit_is_minimal() {
        // 2e_1 is minimal in E2, so (7,0) = 2(2,0) + (3,0) factors uniquely.
        let s = e2();
        let atoms = s.atoms().unwrap();
        let basis = AtomBasis::new(2, atoms).unwrap();
        assert_eq!(basis.count_factorizations_up_to(&pt(&[7, 0]), 5), 1);
        assert_eq!(basis.ell(&pt(&[7, 0])).unwrap(), 3);
    }

    #[test]
    fn invariant_report_for_e2() {
        let report = invariant_report(&e2()).unwrap();
        assert_eq!(report.atom_count, 12);
        assert_eq!(report.gap_count, 5);
        assert_eq!(report.omega, ExtNat::Finite(5));
        assert!(*report.catenary.value().unwrap() <= 3);
    }
}
