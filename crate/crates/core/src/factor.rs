//! Factorizations of lattice points over a finite ordered atom list:
//! enumeration, length sets, distances, and R-classes.

use crate::error::{Error, Result};
use crate::ext::Rational;
use crate::lattice::{Point, PointBox};
use crate::monoid::Monoid;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::RwLock;

/// A lexicographically sorted list of distinct nonzero atoms, the basis all
/// exponent vectors refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomBasis {
    dim: usize,
    atoms: Vec<Point>,
}

impl AtomBasis {
    pub fn new(dim: usize, atoms: Vec<Point>) -> Result<Self> {
        let mut sorted = atoms;
        for a in &sorted {
            a.expect_dim(dim)?;
            if a.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        sorted.sort();
        sorted.dedup();
        Ok(AtomBasis { dim, atoms: sorted })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Point] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// All exponent vectors z with φ(z) = s, exactly once, in ascending
    /// lexicographic order of the dense exponent vector.
    ///
    /// The search walks atoms in basis order, bounding each count by
    /// coordinate feasibility and pruning branches whose remainder has
    /// support outside the atoms still available.
    pub fn factorizations(&self, s: &Point) -> Vec<Factorization> {
        let mut out = Vec::new();
        self.search(s, &mut |z| out.push(z));
        out
    }

    /// True iff s has at least one factorization.
    pub fn is_factorable(&self, s: &Point) -> bool {
        let mut found = false;
        self.search_impl(s, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Count factorizations, stopping the search once `limit` are found.
    pub fn count_factorizations_up_to(&self, s: &Point, limit: usize) -> usize {
        let mut count = 0;
        self.search_impl(s, &mut |_| {
            count += 1;
            count < limit
        });
        count
    }

    fn search(&self, s: &Point, emit: &mut dyn FnMut(Factorization)) {
        self.search_impl(s, &mut |z| {
            emit(z);
            true
        });
    }

    /// Core DFS; the callback returns false to stop the search.
    fn search_impl(&self, s: &Point, emit: &mut dyn FnMut(Factorization) -> bool) {
        let candidates: Vec<(usize, &Point)> = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| a.leq(s))
            .collect();
        // suffix_support[k]: axes covered by candidates k.. (bitmask).
        let mut suffix_support = vec![0u64; candidates.len() + 1];
        for k in (0..candidates.len()).rev() {
            let mask: u64 = candidates[k]
                .1
                .support()
                .iter()
                .fold(0, |m, &axis| m | (1 << axis));
            suffix_support[k] = suffix_support[k + 1] | mask;
        }
        let mut stack: Vec<(usize, u64)> = Vec::new();
        self.dfs(&candidates, &suffix_support, 0, s.clone(), &mut stack, emit);
    }

    fn dfs(
        &self,
        candidates: &[(usize, &Point)],
        suffix_support: &[u64],
        pos: usize,
        remaining: Point,
        stack: &mut Vec<(usize, u64)>,
        emit: &mut dyn FnMut(Factorization) -> bool,
    ) -> bool {
        if remaining.is_zero() {
            let exponents: BTreeMap<usize, u64> = stack.iter().copied().collect();
            return emit(Factorization {
                basis_len: self.atoms.len(),
                exponents,
            });
        }
        if pos == candidates.len() {
            return true;
        }
        let need: u64 = remaining
            .support()
            .iter()
            .fold(0, |m, &axis| m | (1 << axis));
        if need & !suffix_support[pos] != 0 {
            return true;
        }
        let atom = candidates[pos].1;
        let bound = remaining
            .coords()
            .iter()
            .zip(atom.coords())
            .filter(|(_, &a)| a > 0)
            .map(|(&r, &a)| r / a)
            .min()
            .unwrap_or(0);
        for count in 0..=bound {
            let rest = remaining
                .checked_sub(&atom.scale(count))
                .expect("count bounded by coordinates");
            if count > 0 {
                stack.push((candidates[pos].0, count));
            }
            let keep_going = self.dfs(candidates, suffix_support, pos + 1, rest, stack, emit);
            if count > 0 {
                stack.pop();
            }
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// The set of factorization lengths of s, via a dynamic program over the
    /// box ⟦0, s⟧ rather than full enumeration.
    pub fn lengths(&self, s: &Point) -> BTreeSet<u64> {
        self.lengths_table(s).get(s).clone()
    }

    /// Length sets for every point of ⟦0, hi⟧ at once; use this instead of
    /// repeated `lengths` calls when scanning a box.
    pub fn lengths_table(&self, hi: &Point) -> LengthTable {
        let dim = self.dim;
        let strides = {
            let mut st = vec![1u64; dim];
            for i in (0..dim.saturating_sub(1)).rev() {
                st[i] = st[i + 1] * (hi.coord(i + 1) + 1);
            }
            st
        };
        let total = PointBox::from_origin(hi.clone()).point_count() as usize;
        let mut table: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); total];
        table[0].insert(0);
        let index = |p: &Point| -> usize {
            p.coords()
                .iter()
                .zip(&strides)
                .map(|(&c, &s)| (c * s) as usize)
                .sum()
        };
        for p in PointBox::from_origin(hi.clone()).points() {
            if p.is_zero() {
                continue;
            }
            let i = index(&p);
            let mut lengths = BTreeSet::new();
            for a in &self.atoms {
                if let Some(rest) = p.checked_sub(a) {
                    for &l in &table[index(&rest)] {
                        lengths.insert(l + 1);
                    }
                }
            }
            table[i] = lengths;
        }
        LengthTable {
            strides,
            hi: hi.clone(),
            table,
        }
    }

    /// Minimum factorization length.
    pub fn ell(&self, s: &Point) -> Result<u64> {
        self.lengths(s)
            .into_iter()
            .next()
            .ok_or(Error::NoFactorization)
    }

    /// Successive differences of the length set.
    pub fn delta_elem(&self, s: &Point) -> Result<BTreeSet<u64>> {
        let lengths: Vec<u64> = self.lengths(s).into_iter().collect();
        if lengths.is_empty() {
            return Err(Error::NoFactorization);
        }
        Ok(lengths.windows(2).map(|w| w[1] - w[0]).collect())
    }

    /// max L(s) / min L(s) as an exact rational; requires s nonzero and
    /// factorable.
    pub fn elasticity_elem(&self, s: &Point) -> Result<Rational> {
        let lengths = self.lengths(s);
        let min = lengths.iter().next().copied().ok_or(Error::NoFactorization)?;
        if min == 0 {
            return Err(Error::NoFactorization);
        }
        let max = *lengths.iter().next_back().unwrap();
        Ok(Rational::new(max, min))
    }

    /// Length density (|L|−1)/(max−min); defined only when |L| >= 2.
    pub fn ld_elem(&self, s: &Point) -> Result<Rational> {
        let lengths = self.lengths(s);
        if lengths.is_empty() {
            return Err(Error::NoFactorization);
        }
        if lengths.len() < 2 {
            return Err(Error::LdUndefined);
        }
        let min = *lengths.iter().next().unwrap();
        let max = *lengths.iter().next_back().unwrap();
        Ok(Rational::new(lengths.len() as u64 - 1, max - min))
    }
}

/// Precomputed length sets over a box from the origin.
#[derive(Debug, Clone)]
pub struct LengthTable {
    strides: Vec<u64>,
    hi: Point,
    table: Vec<BTreeSet<u64>>,
}

impl LengthTable {
    /// The length set of a point inside the table's box. Empty means no
    /// factorization.
    pub fn get(&self, p: &Point) -> &BTreeSet<u64> {
        assert!(
            p.leq(&self.hi),
            "point {p} outside the length table box [0,{}]",
            self.hi
        );
        let idx: usize = p
            .coords()
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| (c * s) as usize)
            .sum();
        &self.table[idx]
    }
}

/// An exponent vector over an atom basis; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    basis_len: usize,
    /// atom index -> positive count
    exponents: BTreeMap<usize, u64>,
}

impl PartialOrd for Factorization {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factorization {
    /// Lexicographic order of the dense exponent vectors.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.basis_len
            .cmp(&other.basis_len)
            .then_with(|| self.dense().cmp(&other.dense()))
    }
}

impl Factorization {
    /// Assemble from an exponent map over a basis of the given size.
    pub fn from_exponents(basis_len: usize, exponents: BTreeMap<usize, u64>) -> Self {
        debug_assert!(exponents.keys().all(|&idx| idx < basis_len));
        debug_assert!(exponents.values().all(|&c| c > 0));
        Factorization {
            basis_len,
            exponents,
        }
    }

    pub fn exponents(&self) -> &BTreeMap<usize, u64> {
        &self.exponents
    }

    /// Total number of atoms counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.exponents.values().sum()
    }

    /// The factored element Σ count · atom.
    pub fn image(&self, basis: &AtomBasis) -> Point {
        let mut acc = Point::zero(basis.dim());
        for (&idx, &count) in &self.exponents {
            acc = acc.add(&basis.atoms()[idx].scale(count));
        }
        acc
    }

    /// Dense exponent array over the sorted basis.
    pub fn dense(&self) -> Vec<u64> {
        let mut out = vec![0; self.basis_len];
        for (&idx, &count) in &self.exponents {
            out[idx] = count;
        }
        out
    }

    fn meet(&self, other: &Factorization) -> BTreeMap<usize, u64> {
        self.exponents
            .iter()
            .filter_map(|(idx, &c)| {
                other
                    .exponents
                    .get(idx)
                    .map(|&d| (*idx, c.min(d)))
            })
            .filter(|(_, c)| *c > 0)
            .collect()
    }

    pub fn shares_atom(&self, other: &Factorization) -> bool {
        self.exponents
            .keys()
            .any(|idx| other.exponents.contains_key(idx))
    }
}

/// d(u, v) = max(|u − u∧v|, |v − u∧v|).
pub fn distance(u: &Factorization, v: &Factorization) -> Result<u64> {
    if u.basis_len != v.basis_len {
        return Err(Error::BasisMismatch);
    }
    let meet = u.meet(v);
    let meet_len: u64 = meet.values().sum();
    Ok((u.length() - meet_len).max(v.length() - meet_len))
}

/// Partition factorizations into R-classes: connected components of the
/// "shares an atom" graph. Classes are ordered by their smallest member
/// index; members keep input order.
pub fn r_classes(zs: &[Factorization]) -> Vec<Vec<usize>> {
    let n = zs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            parent[i] = find(parent, parent[i]);
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if zs[i].shares_atom(&zs[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(i);
    }
    classes.into_values().collect()
}

/// The monoid generated by an explicit atom list, with membership decided by
/// factorization feasibility (memoized across queries).
#[derive(Debug)]
pub struct AtomSetMonoid {
    basis: AtomBasis,
    memo: RwLock<HashMap<Point, bool>>,
}

impl AtomSetMonoid {
    pub fn new(basis: AtomBasis) -> Self {
        AtomSetMonoid {
            basis,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn basis(&self) -> &AtomBasis {
        &self.basis
    }

    fn member(&self, x: &Point) -> bool {
        if x.is_zero() {
            return true;
        }
        if let Some(&v) = self.memo.read().unwrap().get(x) {
            return v;
        }
        let result = self
            .basis
            .atoms()
            .iter()
            .any(|a| x.checked_sub(a).is_some_and(|rest| self.member(&rest)));
        self.memo.write().unwrap().insert(x.clone(), result);
        result
    }
}

impl Monoid for AtomSetMonoid {
    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn contains(&self, x: &Point) -> bool {
        self.member(x)
    }

    fn atoms_in_box(&self, b: &PointBox) -> Vec<Point> {
        self.basis
            .atoms()
            .iter()
            .filter(|a| b.contains(a))
            .cloned()
            .collect()
    }
}
