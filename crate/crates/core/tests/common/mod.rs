//! Brute-force enumerators shared by the oracle-equivalence and acceptance
//! suites. Everything here recomputes results from definitions, independent
//! of the library's algorithmic shortcuts.
//!
//! Each test binary compiles this module separately and uses a subset.
#![allow(dead_code)]

use idealext::factor::Factorization;
use idealext::lattice::{Point, PointBox};
use idealext::monoid::Monoid;

/// Atoms by definition: nonzero members of the box that do not split as a
/// sum of two nonzero members.
pub fn atoms_oracle(monoid: &dyn Monoid, boxed: &PointBox) -> Vec<Point> {
    boxed
        .points()
        .filter(|x| !x.is_zero() && monoid.contains(x))
        .filter(|x| {
            !PointBox::from_origin(x.clone()).points().any(|y| {
                !y.is_zero()
                    && monoid.contains(&y)
                    && x.checked_sub(&y)
                        .is_some_and(|rest| !rest.is_zero() && monoid.contains(&rest))
            })
        })
        .collect()
}

/// Gaps by definition: non-members of the box, excluding nothing (0 is a
/// member, so it never appears).
pub fn gaps_oracle(monoid: &dyn Monoid, boxed: &PointBox) -> Vec<Point> {
    boxed.points().filter(|x| !monoid.contains(x)).collect()
}

/// Every exponent vector over `atoms` summing to `s`, by walking the full
/// odometer of coordinate-feasible exponent bounds.
pub fn factorizations_oracle(atoms: &[Point], s: &Point) -> Vec<Vec<u64>> {
    let bounds: Vec<u64> = atoms
        .iter()
        .map(|a| {
            a.coords()
                .iter()
                .zip(s.coords())
                .filter(|(&ac, _)| ac > 0)
                .map(|(&ac, &sc)| sc / ac)
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut out = Vec::new();
    let mut exponents = vec![0u64; atoms.len()];
    loop {
        let image = atoms
            .iter()
            .zip(&exponents)
            .fold(Point::zero(s.dim()), |acc, (a, &count)| {
                acc.add(&a.scale(count))
            });
        if image == *s {
            out.push(exponents.clone());
        }
        // Odometer increment.
        let mut idx = atoms.len();
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            if exponents[idx] < bounds[idx] {
                exponents[idx] += 1;
                for e in exponents.iter_mut().skip(idx + 1) {
                    *e = 0;
                }
                break;
            }
        }
    }
}

/// Number of R-classes computed from exponent vectors alone: connected
/// components of the "shares a nonzero exponent" relation, by union-find
/// written out here.
pub fn r_class_count_oracle(factorizations: &[Vec<u64>]) -> usize {
    let n = factorizations.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let shares = factorizations[i]
                .iter()
                .zip(&factorizations[j])
                .any(|(&a, &b)| a > 0 && b > 0);
            if shares {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    roots.sort();
    roots.dedup();
    roots.len()
}

/// Betti elements in a box from the factorization side: members with at
/// least two R-classes of factorizations over the atoms below them.
pub fn betti_oracle(monoid: &dyn Monoid, boxed: &PointBox) -> Vec<Point> {
    boxed
        .points()
        .filter(|s| !s.is_zero() && monoid.contains(s))
        .filter(|s| {
            let atoms = monoid.atoms_in_box(&PointBox::from_origin(s.clone()));
            let zs = factorizations_oracle(&atoms, s);
            r_class_count_oracle(&zs) >= 2
        })
        .collect()
}

/// Exponent multiset of a factorization as (atom, count) pairs, for
/// order-insensitive comparisons against listings.
pub fn as_multiset(basis_atoms: &[Point], z: &Factorization) -> Vec<(Point, u64)> {
    z.exponents()
        .iter()
        .map(|(&i, &c)| (basis_atoms[i].clone(), c))
        .collect()
}
