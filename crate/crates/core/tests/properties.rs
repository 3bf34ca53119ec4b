//! Property-based invariants: lattice laws, enumeration counts,
//! factorization structure, and the order-theoretic facts the invariant
//! engine depends on.

mod common;

use common::factorizations_oracle;
use idealext::factor::{distance, r_classes, AtomBasis};
use idealext::invariants::{
    betti_graph, catenary_elem, catenary_rclass_formula, delta_over, dominating_subset,
    omega_bounds, omega_elem,
};
use idealext::lattice::{minimals_of, Point, PointBox};
use idealext::monoid::{GapFiniteness, IdealExtension};
use idealext::numsgp::NumericalSemigroup;
use proptest::collection::vec;
use proptest::prelude::*;

fn point2() -> impl Strategy<Value = Point> {
    vec(0u64..8, 2).prop_map(Point::new)
}

fn nonzero_point2() -> impl Strategy<Value = Point> {
    point2().prop_filter("nonzero", |p| !p.is_zero())
}

/// Generators restricted so that the gap set is finite.
fn finite_gap_ideal2() -> impl Strategy<Value = IdealExtension> {
    (vec(nonzero_point2(), 0..4), 1u64..5, 1u64..5).prop_map(|(mut generators, cx, cy)| {
        generators.push(Point::new(vec![cx, 0]));
        generators.push(Point::new(vec![0, cy]));
        IdealExtension::new(2, generators).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(a in point2(), b in point2()) {
        prop_assert_eq!(a.join(&b), b.join(&a));
        prop_assert_eq!(a.meet(&b), b.meet(&a));
        // Absorption.
        prop_assert_eq!(a.join(&a.meet(&b)), a.clone());
        prop_assert_eq!(a.meet(&a.join(&b)), a.clone());
        // Meet and join sandwich both arguments.
        prop_assert!(a.meet(&b).leq(&a) && a.leq(&a.join(&b)));
    }

    #[test]
    fn box_points_enumerate_exactly(lo in vec(0u64..4, 2), extent in vec(0u64..4, 2)) {
        let lo = Point::new(lo);
        let hi = lo.add(&Point::new(extent));
        let boxed = PointBox::new(lo, hi).unwrap();
        let points: Vec<Point> = boxed.points().collect();
        prop_assert_eq!(points.len() as u64, boxed.point_count());
        prop_assert!(points.iter().all(|p| boxed.contains(p)));
        prop_assert!(points.windows(2).all(|w| w[0] < w[1]), "strictly ascending");
    }

    #[test]
    fn minimals_are_dominating_antichain(points in vec(point2(), 0..12)) {
        let minimals = minimals_of(points.clone());
        for (i, m) in minimals.iter().enumerate() {
            for n in minimals.iter().skip(i + 1) {
                prop_assert!(!m.leq(n) && !n.leq(m));
            }
        }
        for p in &points {
            prop_assert!(minimals.iter().any(|m| m.leq(p)));
        }
    }

    #[test]
    fn minimal_plus_gap_stays_inside(monoid in finite_gap_ideal2()) {
        for m in monoid.minimals() {
            for h in monoid.gap_points().unwrap() {
                prop_assert!(monoid.contains(&m.add(&h)));
            }
        }
    }

    #[test]
    fn atoms_agree_with_definition_in_candidate_box(monoid in finite_gap_ideal2()) {
        let atoms = monoid.atoms().unwrap();
        // Exhaustive definition check within the candidate region.
        let hi = atoms.iter().fold(Point::zero(2), |acc, a| acc.join(a));
        for p in PointBox::from_origin(hi).points() {
            let is_atom_def = !p.is_zero()
                && monoid.contains(&p)
                && !PointBox::from_origin(p.clone()).points().any(|y| {
                    !y.is_zero()
                        && monoid.contains(&y)
                        && p.checked_sub(&y)
                            .is_some_and(|r| !r.is_zero() && monoid.contains(&r))
                });
            prop_assert_eq!(atoms.contains(&p), is_atom_def, "{}", p);
        }
    }

    #[test]
    fn dimension_two_is_always_gap_absorbing(monoid in finite_gap_ideal2()) {
        let check = monoid.is_gap_absorbing().unwrap();
        prop_assert!(check.holds, "witness {:?}", check.witness);
        prop_assert!(monoid.two_atoms_interval_check().unwrap().holds);
    }

    #[test]
    fn factorizations_reconstruct_and_match_oracle(
        monoid in finite_gap_ideal2(),
        target in point2(),
    ) {
        let boxed = PointBox::from_origin(Point::new(vec![8, 8]));
        let atoms = monoid.atoms_in_box(&boxed);
        prop_assume!(atoms.len() <= 6);
        let basis = AtomBasis::new(2, atoms.clone()).unwrap();
        let zs = basis.factorizations(&target);
        for z in &zs {
            prop_assert_eq!(z.image(&basis), target.clone());
        }
        let mut expected = factorizations_oracle(&atoms, &target);
        expected.sort();
        let got: Vec<Vec<u64>> = zs.iter().map(|z| z.dense()).collect();
        prop_assert_eq!(got, expected);
        // Length sets from the DP agree with the enumeration.
        let lengths: std::collections::BTreeSet<u64> =
            zs.iter().map(|z| z.length()).collect();
        prop_assert_eq!(basis.lengths(&target), lengths);
    }

    #[test]
    fn distance_is_a_metric_on_factorization_sets(
        monoid in finite_gap_ideal2(),
        target in point2(),
    ) {
        let atoms = monoid.atoms_in_box(&PointBox::from_origin(target.clone()));
        prop_assume!(!atoms.is_empty());
        let basis = AtomBasis::new(2, atoms).unwrap();
        let zs = basis.factorizations(&target);
        prop_assume!(zs.len() >= 2);
        for u in &zs {
            prop_assert_eq!(distance(u, u).unwrap(), 0);
            for v in &zs {
                prop_assert_eq!(distance(u, v).unwrap(), distance(v, u).unwrap());
                if u != v {
                    prop_assert!(distance(u, v).unwrap() > 0);
                }
                for w in &zs {
                    prop_assert!(
                        distance(u, w).unwrap()
                            <= distance(u, v).unwrap() + distance(v, w).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn r_class_count_equals_graph_components(
        monoid in finite_gap_ideal2(),
        target in point2(),
    ) {
        prop_assume!(!target.is_zero() && monoid.contains(&target));
        let graph = betti_graph(&monoid, &target).unwrap();
        let atoms = monoid.atoms_in_box(&PointBox::from_origin(target.clone()));
        let basis = AtomBasis::new(2, atoms).unwrap();
        let zs = basis.factorizations(&target);
        prop_assume!(!zs.is_empty());
        prop_assert_eq!(r_classes(&zs).len(), graph.components.len());
    }

    #[test]
    fn catenary_cross_checks_on_betti_elements(monoid in finite_gap_ideal2()) {
        let betti = idealext::invariants::betti_elements(&monoid).unwrap();
        for b in &betti.elements {
            let direct = catenary_elem(&monoid, b).unwrap();
            let formula = catenary_rclass_formula(&monoid, b).unwrap();
            prop_assert_eq!(direct, formula, "betti element {}", b);
            prop_assert!(direct <= 3, "dimension-two catenary bound");
        }
        // 2 + max delta <= catenary wherever a delta gap exists.
        let delta = delta_over(&monoid, &betti.elements);
        if let Some(&max_delta) = delta.iter().next_back() {
            let c = idealext::invariants::catenary_over(&monoid, &betti.elements).unwrap();
            prop_assert!(2 + max_delta <= c);
        }
    }

    #[test]
    fn omega_respects_bounds_and_monotonicity(monoid in finite_gap_ideal2()) {
        let atoms = monoid.atoms().unwrap();
        let small: Vec<&Point> = atoms.iter().filter(|a| a.norm1() <= 5).collect();
        let mut values = Vec::new();
        for a in &small {
            let (lower, upper) = omega_bounds(&monoid, a).unwrap();
            let value = omega_elem(&monoid, a, None)
                .unwrap()
                .value
                .finite()
                .unwrap();
            prop_assert!(lower <= value && value <= upper, "atom {}", a);
            values.push(((*a).clone(), value));
        }
        for (a, wa) in &values {
            for (b, wb) in &values {
                if a.leq(b) {
                    prop_assert!(wa <= wb, "omega must be non-decreasing: {} vs {}", a, b);
                }
            }
        }
    }

    #[test]
    fn omega_matches_minimal_cover_enumeration(
        monoid in finite_gap_ideal2(),
        coords in vec(0u64..4, 2),
    ) {
        // Independent route: enumerate every atom multiset of length at most
        // ‖s‖₁+1 by plain odometer, keep the covers, filter the minimal ones
        // by componentwise domination, and take the longest.
        let s = Point::new(coords);
        prop_assume!(!s.is_zero() && monoid.contains(&s));
        let atoms = monoid.atoms().unwrap();
        prop_assume!(atoms.len() <= 10);
        let cap = s.norm1() + 1;
        let mut covers: Vec<Vec<u64>> = Vec::new();
        let mut exponents = vec![0u64; atoms.len()];
        loop {
            let total: u64 = exponents.iter().sum();
            if total <= cap {
                let image = atoms
                    .iter()
                    .zip(&exponents)
                    .fold(Point::zero(2), |acc, (a, &c)| acc.add(&a.scale(c)));
                let covered = image
                    .checked_sub(&s)
                    .is_some_and(|rest| monoid.contains(&rest));
                if covered && total > 0 {
                    covers.push(exponents.clone());
                }
            }
            let mut idx = atoms.len();
            let mut done = true;
            while idx > 0 {
                idx -= 1;
                if exponents[idx] < cap {
                    exponents[idx] += 1;
                    for e in exponents.iter_mut().skip(idx + 1) {
                        *e = 0;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
        let minimal_max = covers
            .iter()
            .filter(|x| {
                !covers.iter().any(|y| {
                    *y != **x && y.iter().zip(x.iter()).all(|(a, b)| a <= b)
                })
            })
            .map(|x| x.iter().sum::<u64>())
            .max()
            .unwrap_or(0);
        let omega = omega_elem(&monoid, &s, None).unwrap().value.finite().unwrap();
        prop_assert_eq!(omega, minimal_max, "element {}", s);
    }

    #[test]
    fn dominating_subset_is_small_and_dominates(
        a in point2(),
        parts in vec(point2(), 1..8),
    ) {
        match dominating_subset(&a, &parts) {
            Some(subset) => {
                prop_assert!(subset.len() as u64 <= a.norm1().max(1));
                let total = subset
                    .iter()
                    .fold(Point::zero(2), |acc, &j| acc.add(&parts[j]));
                prop_assert!(a.leq(&total));
            }
            None => {
                let total = parts.iter().fold(Point::zero(2), |acc, p| acc.add(p));
                prop_assert!(!a.leq(&total));
            }
        }
    }

    #[test]
    fn numerical_semigroup_atoms_are_irredundant(gaps in vec(1u64..31, 0..10)) {
        let Ok(t) = NumericalSemigroup::from_gaps(gaps) else {
            return Ok(());
        };
        // Regenerating from the atoms gives the same semigroup, and no atom
        // is a sum of the others.
        let regen = NumericalSemigroup::from_generators(t.atoms().iter().copied());
        prop_assert_eq!(regen.as_ref().ok(), Some(&t));
        for &a in t.atoms() {
            let others: Vec<u64> = t.atoms().iter().copied().filter(|&b| b != a).collect();
            if others.is_empty() {
                continue;
            }
            let Ok(reduced) = NumericalSemigroup::from_generators(others.iter().copied())
            else {
                continue;
            };
            prop_assert!(!reduced.contains(a), "atom {} is redundant", a);
        }
    }

    #[test]
    fn lengths_transfer_for_backslash_monoids(
        j_mask in 1u8..4,
        m in 1u64..4,
        coords in vec(0u64..7, 2),
    ) {
        let j: Vec<usize> = (0..2).filter(|i| j_mask & (1 << i) != 0).collect();
        let monoid = idealext::BackslashMonoid::new(
            2, j, NumericalSemigroup::ordinary(m),
        ).unwrap();
        let p = Point::new(coords);
        prop_assume!(monoid.contains(&p) && !p.is_zero());
        // Fast path equals the generic engine over the atoms below p.
        let generic = idealext::invariants::lengths_of(&monoid, &p);
        prop_assert_eq!(monoid.lengths(&p).unwrap(), generic);
    }
}

#[test]
fn gap_finiteness_matches_threshold_criterion() {
    // Axis thresholds are finite exactly when the gap set is finite; the
    // two reports must stay consistent.
    for minimals in [
        vec![Point::new(vec![0, 1])],
        vec![Point::new(vec![2, 0]), Point::new(vec![0, 3])],
        vec![Point::new(vec![1, 1])],
    ] {
        let monoid = IdealExtension::new(2, minimals).unwrap();
        let report = monoid.gaps();
        let all_finite = report.axis_thresholds.iter().all(|c| c.is_finite());
        assert_eq!(
            matches!(report.finiteness, GapFiniteness::Finite),
            all_finite
        );
    }
}
