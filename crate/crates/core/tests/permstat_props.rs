use std::collections::BTreeSet;

use nslen_core::group::*;
use nslen_core::permstat::*;
use nslen_core::Exec;
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn stats(g: &PermGroup) -> SupportStats {
    moments(g, 1 << 20, &Exec::sequential()).unwrap()
}

/// Orbit counts on points and on ordered pairs, straight from the elements.
fn brute_orbits(g: &PermGroup) -> (usize, usize) {
    let n = g.degree() as u32;
    let elems = g.elements(1 << 20).unwrap();
    let points: BTreeSet<BTreeSet<u32>> = (0..n)
        .map(|x| elems.iter().map(|s| s.image(x)).collect())
        .collect();
    let pairs: BTreeSet<BTreeSet<(u32, u32)>> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| elems.iter().map(|s| (s.image(x), s.image(y))).collect())
        .collect();
    (points.len(), pairs.len())
}

#[test]
fn moments_equal_orbit_counts_on_corpus() {
    let corpus = bound_corpus();
    assert_eq!(corpus.len(), 230);
    for (i, g) in corpus.iter().enumerate() {
        let s = stats(g);
        let (t, r) = brute_orbits(g);
        assert_eq!((s.t, s.r), (t, r), "group {i}");
        assert_eq!(s.mean_fix, q(t as i64, 1));
        assert_eq!(s.mean_fix_sq, q(r as i64, 1));
        assert_eq!(s.support_counts.iter().sum::<u64>(), s.order);
        assert_eq!(s.sb_count(0), 1);
    }
}

#[test]
fn support_theorem_on_corpus() {
    for g in bound_corpus() {
        let s = stats(&g);
        let rep = check_support_theorem(&s);
        assert!(rep.order_holds && rep.supp_holds, "{rep:?}");
        assert!(BigUint::from(s.order) <= factorial(s.c as u64));
        if s.c > 1 {
            assert!(s.supp_p <= 2 * (s.c - 1));
        }
    }
}

#[test]
fn support_theorem_is_sharp() {
    for c in 2..=6 {
        let s = stats(&sym(c).unwrap());
        assert_eq!(s.c, c);
        assert_eq!(BigUint::from(s.order), factorial(c as u64));
    }
    for k in 2..=4u32 {
        let g = hadamard_perm_group(k).unwrap();
        let s = stats(&g);
        assert_eq!(s.order, 1 << k);
        assert_eq!(s.c, 1 << k);
        assert_eq!(s.supp_p, 2 * (s.c - 1));
        assert_eq!(s.support_counts[1 << k], (1 << k) - 1);
        assert!(g
            .elements(64)
            .unwrap()
            .iter()
            .all(|x| x.pow(2).is_identity()));
    }
}

#[test]
fn f_bound_on_corpus() {
    for g in bound_corpus() {
        let s = stats(&g);
        for c in 0..=4u64 {
            let rho = s.rho(c as usize);
            let parts = f_bound_parts(&rho, c).unwrap();
            assert!(
                parts.at_least(&BigUint::from(s.order)),
                "C = {c}, rho = {rho}"
            );
            if parts.log10() < 2000.0 {
                assert!(f_bound(&rho, c).unwrap() >= BigUint::from(s.order));
            }
        }
    }
}

#[test]
fn f_bound_examples() {
    assert_eq!(f_bound(&q(1, 1), 0).unwrap(), BigUint::from(1u32));
    assert_eq!(f_bound(&q(1, 1), 1).unwrap(), BigUint::from(6u32).pow(8));
    let ln2 = std::f64::consts::LN_2;
    assert_eq!((8.0 * (2.0 + ln2)).ceil() as u64, 22);
    assert_eq!(f_bound(&q(1, 2), 2).unwrap(), BigUint::from(120u32).pow(22));
    assert!(f_bound_parts(&q(-1, 2), 0).is_err());
}

#[test]
fn tail_bounds_on_corpus() {
    let eps = [q(1, 10), q(1, 3), q(1, 2), q(2, 3), q(9, 10)];
    for g in bound_corpus() {
        let s = stats(&g);
        for e in &eps {
            for c in 0..=4 {
                let rep = markov_chebyshev_report(&s, e, c).unwrap();
                assert!(rep.holds(), "{rep:?}");
            }
        }
    }
}

#[test]
fn tail_examples() {
    let s = stats(&sym(3).unwrap());
    let rep = markov_chebyshev_report(&s, &q(2, 3), 0).unwrap();
    assert_eq!(rep.markov.bound, q(1, 2));
    assert_eq!(rep.markov.empirical, q(5, 6));
    let s = stats(&PermGroup::trivial(5));
    let rep = markov_chebyshev_report(&s, &q(1, 2), 0).unwrap();
    assert!(rep.markov.bound <= q(0, 1));
    assert_eq!(rep.markov.empirical, q(0, 1));
    assert!(rep.holds());
    assert!(markov_chebyshev_report(&s, &q(1, 1), 0).is_err());
}

#[test]
fn factorial_products() {
    let r = factorial_product_bound(&[3, 2]).unwrap();
    assert_eq!((r.lhs, r.rhs), (BigUint::from(12u32), BigUint::from(24u32)));
    let r = factorial_product_bound(&[7]).unwrap();
    assert!(r.holds && r.lhs == r.rhs);
    assert!(factorial_product_bound(&[2, 0]).is_err());
    for g in bound_corpus() {
        let sizes: Vec<u64> = g.orbits().iter().map(|o| o.len() as u64).collect();
        assert!(factorial_product_bound(&sizes).unwrap().holds);
    }
}

#[test]
fn dihedral_subdirect_powers() {
    for (m, k) in [(2usize, 6usize), (3, 24)] {
        let d = dihedral_subdirect_power(m).unwrap();
        assert_eq!(d.k(), k);
        let g = &d.group;
        assert_eq!(g.degree(), 6 * k);
        let orbits = g.orbits();
        assert!(orbits.iter().all(|o| o.len() == 6));
        let t = orbit_count(g);
        assert_eq!(t, k);
        let r = rank(g);
        assert!(r >= 2 * t * t, "m = {m}: r = {r}, t = {t}");
        assert!(g.order() >= BigUint::from(m));
    }
    let s = stats(&dihedral_subdirect_power(2).unwrap().group);
    assert!(s.r >= 72);
    assert!(dihedral_subdirect_power(1).is_err());
}

#[test]
fn small_support_sets() {
    let s5 = sym(5).unwrap();
    assert_eq!(small_support_set(&s5, 0, 200).unwrap().len(), 1);
    assert_eq!(small_support_set(&s5, 2, 200).unwrap().len(), 11);
    assert_eq!(small_support_set(&s5, 3, 200).unwrap().len(), 31);
    assert!(small_support_set(&s5, 3, 50).is_err());
}

#[test]
fn worker_count_does_not_change_moments() {
    let g = sym(7).unwrap();
    let a = moments(&g, 1 << 20, &Exec::sequential()).unwrap();
    let b = moments(&g, 1 << 20, &Exec::with_threads(4).unwrap()).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_subgroups_satisfy_every_bound(seed in any::<u64>()) {
        for g in random_subgroups(seed, 4) {
            let s = stats(&g);
            let (t, r) = brute_orbits(&g);
            prop_assert_eq!((s.t, s.r), (t, r));
            let rep = check_support_theorem(&s);
            prop_assert!(rep.order_holds && rep.supp_holds);
            for c in 0..=4u64 {
                prop_assert!(f_bound_parts(&s.rho(c as usize), c).unwrap().at_least(&BigUint::from(s.order)));
            }
        }
    }
}
