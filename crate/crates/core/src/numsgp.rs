//! Numerical semigroups: finite-complement submonoids of ℕ.
//!
//! These are the base data for backslash monoids. A semigroup is stored by
//! its finite gap set; minimal generators are computed on construction.

use crate::error::{Error, Result};
use crate::ext::Rational;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gaps: Vec<u64>,
    multiplicity: u64,
    atoms: Vec<u64>,
}

impl NumericalSemigroup {
    /// Build from the finite gap set, validating that the complement is
    /// closed under addition.
    pub fn from_gaps<I: IntoIterator<Item = u64>>(gaps: I) -> Result<Self> {
        let gaps: BTreeSet<u64> = gaps.into_iter().collect();
        if gaps.contains(&0) {
            return Err(Error::ComplementNotClosed { a: 0, b: 0 });
        }
        let frobenius = gaps.iter().next_back().copied().unwrap_or(0);
        let member = |n: u64| !gaps.contains(&n);
        for a in 1..=frobenius {
            if !member(a) {
                continue;
            }
            for b in a..=frobenius.saturating_sub(a) {
                if member(b) && !member(a + b) {
                    return Err(Error::ComplementNotClosed { a, b });
                }
            }
        }
        let gaps: Vec<u64> = gaps.into_iter().collect();
        let multiplicity = (1..).find(|n| !gaps.contains(n)).unwrap();
        let atoms = compute_atoms(&gaps, multiplicity, frobenius);
        Ok(NumericalSemigroup {
            gaps,
            multiplicity,
            atoms,
        })
    }

    /// Build the semigroup generated by `gens`; requires gcd 1. Gaps are
    /// found by an additive sieve up to min·max, which bounds the Frobenius
    /// number.
    pub fn from_generators<I: IntoIterator<Item = u64>>(gens: I) -> Result<Self> {
        let gens: BTreeSet<u64> = gens.into_iter().filter(|&g| g > 0).collect();
        if gens.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        let gcd = gens.iter().copied().fold(0u64, num_integer::gcd);
        if gcd != 1 {
            return Err(Error::GcdNotOne { gcd });
        }
        let min = *gens.iter().next().unwrap();
        let max = *gens.iter().next_back().unwrap();
        let bound = (min.checked_mul(max).expect("sieve bound overflow")) as usize;
        let mut reachable = vec![false; bound + 1];
        reachable[0] = true;
        for &g in &gens {
            for i in g as usize..=bound {
                if reachable[i - g as usize] {
                    reachable[i] = true;
                }
            }
        }
        let gaps = (1..=bound as u64).filter(|&n| !reachable[n as usize]);
        NumericalSemigroup::from_gaps(gaps)
    }

    /// The ordinary semigroup {0} ∪ (m + ℕ).
    pub fn ordinary(m: u64) -> Self {
        assert!(m >= 1);
        NumericalSemigroup::from_gaps(1..m).expect("ordinary gap sets are always valid")
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn frobenius(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// Minimal generators.
    pub fn atoms(&self) -> &[u64] {
        &self.atoms
    }

    pub fn contains(&self, n: u64) -> bool {
        n == 0 || self.gaps.binary_search(&n).is_err()
    }

    /// `Some(m)` iff the semigroup is {0} ∪ (m + ℕ).
    pub fn is_ordinary(&self) -> Option<u64> {
        let m = self.gaps.len() as u64 + 1;
        let ordinary = self
            .gaps
            .iter()
            .zip(1..)
            .all(|(&gap, expected)| gap == expected);
        ordinary.then_some(m)
    }

    /// The set of lengths L(n): all k such that n is a sum of k minimal
    /// generators. Every reported length is witnessed by the bottom-up DP.
    pub fn lengths(&self, n: u64) -> Result<BTreeSet<u64>> {
        if !self.contains(n) {
            return Err(Error::NotMember);
        }
        let mut table: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); n as usize + 1];
        table[0].insert(0);
        for v in 1..=n as usize {
            let mut lengths = BTreeSet::new();
            for &a in &self.atoms {
                let a = a as usize;
                if a <= v {
                    for &l in &table[v - a] {
                        lengths.insert(l + 1);
                    }
                }
            }
            table[v] = lengths;
        }
        Ok(table[n as usize].clone())
    }

    /// Successive differences of L(n); requires n in the semigroup, n > 0.
    pub fn delta(&self, n: u64) -> Result<BTreeSet<u64>> {
        if n == 0 {
            return Err(Error::NotMember);
        }
        let lengths: Vec<u64> = self.lengths(n)?.into_iter().collect();
        Ok(lengths.windows(2).map(|w| w[1] - w[0]).collect())
    }

    /// max L(n) / min L(n) as an exact rational.
    pub fn elasticity_elem(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::NotMember);
        }
        let lengths = self.lengths(n)?;
        let min = *lengths.iter().next().ok_or(Error::NoFactorization)?;
        let max = *lengths.iter().next_back().unwrap();
        Ok(Rational::new(max, min))
    }

    /// Elasticity of the ordinary semigroup {0} ∪ (m+ℕ): (2m−1)/m.
    pub fn elasticity_ordinary(&self) -> Result<Rational> {
        let m = self.is_ordinary().ok_or(Error::FormulaOutOfScope)?;
        if m == 1 {
            return Ok(Rational::new(1, 1));
        }
        Ok(Rational::new(2 * m - 1, m))
    }

    /// sup of element elasticities over members in [1, bound]; a scan, not a
    /// closed form.
    pub fn elasticity_scan(&self, bound: u64) -> Rational {
        let mut best = Rational::new(1, 1);
        for n in 1..=bound {
            if self.contains(n) {
                if let Ok(rho) = self.elasticity_elem(n) {
                    best = best.max(rho);
                }
            }
        }
        best
    }

    /// inf of (|L(n)|−1)/(max−min) over members in [1, bound] with at least
    /// two lengths; `None` when no such element exists in range.
    pub fn length_density_scan(&self, bound: u64) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for n in 1..=bound {
            if !self.contains(n) {
                continue;
            }
            let lengths = self.lengths(n).unwrap();
            if lengths.len() < 2 {
                continue;
            }
            let min = *lengths.iter().next().unwrap();
            let max = *lengths.iter().next_back().unwrap();
            let ld = Rational::new(lengths.len() as u64 - 1, max - min);
            best = Some(best.map_or(ld, |b: Rational| b.min(ld)));
        }
        best
    }
}

fn compute_atoms(gaps: &[u64], multiplicity: u64, frobenius: u64) -> Vec<u64> {
    // Every n > frobenius + multiplicity splits as multiplicity + member, so
    // atoms live in [multiplicity, frobenius + multiplicity].
    let member = |n: u64| n == 0 || gaps.binary_search(&n).is_err();
    let mut atoms = Vec::new();
    for n in multiplicity..=frobenius + multiplicity {
        if !member(n) {
            continue;
        }
        let decomposable =
            (multiplicity..=n.saturating_sub(multiplicity)).any(|a| member(a) && member(n - a));
        if !decomposable {
            atoms.push(n);
        }
    }
    atoms
}
