use std::collections::BTreeMap;
use std::sync::Arc;

use nslen_core::group::*;
use nslen_core::structure::coset_class_of;
use nslen_core::word::{Letter, Sign, Variable};
use nslen_core::wordmap::*;
use nslen_core::{parse_word, Error, Exec, Word};
use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1 << 32;

fn w(s: &str) -> Word {
    parse_word(s).unwrap()
}

fn en(g: PermGroup) -> Arc<EnumeratedGroup> {
    Arc::new(g.enumerate(DEFAULT_ENUMERATION_CAP).unwrap())
}

fn p(n: usize, s: &str) -> Permutation {
    Permutation::parse(n, s).unwrap()
}

fn coset(spec: SimpleSpec, eps: u32, t: u32) -> AutCoset {
    SimpleGroup::new(spec)
        .unwrap()
        .coset(OuterSpec { eps, t })
        .unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, vars: u32) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::from_letters((0..len).map(|_| {
        let sign = if rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        };
        Letter::new(Variable::new(rng.gen_range(1..=vars)).unwrap(), sign)
    }))
}

/// Catalog groups of order at most 400.
fn small_catalog() -> Vec<SimpleSpec> {
    ["alt:5", "psl2:4", "psl2:5", "psl2:7", "psl2:9"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn evaluation_examples() {
    let s = SymGroup { degree: 3 };
    let (a, b) = (p(3, "(1 2)"), p(3, "(1 3)"));
    let assign = BTreeMap::from([
        (Variable::new(1).unwrap(), a.clone()),
        (Variable::new(2).unwrap(), b.clone()),
    ]);
    let brute = a.compose(&b).compose(&a.inverse()).compose(&b.inverse());
    assert_eq!(evaluate(&s, &w("x y x^-1 y^-1"), &assign).unwrap(), brute);
    assert_eq!(brute, p(3, "(1 2 3)"));
    assert!(evaluate(&s, &Word::empty(), &BTreeMap::new())
        .unwrap()
        .is_identity());
    let c = p(5, "(1 2 3)");
    let assign = BTreeMap::from([(Variable::new(1).unwrap(), c.clone())]);
    assert_eq!(
        evaluate(&SymGroup { degree: 5 }, &w("x^8"), &assign).unwrap(),
        c.pow(2)
    );
    assert!(matches!(
        evaluate(&s, &w("x y"), &BTreeMap::new()),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn fiber_examples() {
    let exec = Exec::sequential();
    let s3 = en(sym(3).unwrap());
    let d = fiber_distribution(&w("x y x^-1 y^-1"), &s3, BUDGET, &exec).unwrap();
    assert_eq!(d.counts[0], 18);
    assert_eq!(d.proportion(0), BigRational::new(1.into(), 2.into()));
    let sq = fiber_distribution(&w("x^2"), &s3, BUDGET, &exec).unwrap();
    for g in 0..6u32 {
        let expected = match s3.order_of(g) {
            1 => 4,
            3 => 1,
            _ => 0,
        };
        assert_eq!(sq.counts[g as usize], expected);
    }
    let a5 = en(alt(5).unwrap());
    let d = fiber_distribution(&w("x y x^-1 y^-1"), &a5, BUDGET, &exec).unwrap();
    assert_eq!(d.proportion(0), BigRational::new(1.into(), 12.into()));
    for g in [sym(3).unwrap(), alt(4).unwrap()] {
        let e = en(g);
        let d = fiber_distribution(&w("x"), &e, BUDGET, &exec).unwrap();
        assert!(d.counts.iter().all(|&c| c == 1));
    }
    assert!(matches!(
        fiber_distribution(&w("x y z"), &a5, 1000, &exec),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn identity_examples() {
    let exec = Exec::sequential();
    let a5 = en(alt(5).unwrap());
    assert!(satisfies_identity(&w("x^30"), &a5, BUDGET, &exec).unwrap());
    assert!(!satisfies_identity(&w("x^15"), &a5, BUDGET, &exec).unwrap());
    let s3 = en(sym(3).unwrap());
    let witness = identity_witness(&w("x^2"), &s3, BUDGET, &exec)
        .unwrap()
        .unwrap();
    assert_eq!(s3.order_of(witness[0]), 3);
    let v = satisfies_prob_identity(
        &w("x y x^-1 y^-1"),
        &s3,
        &BigRational::new(1.into(), 2.into()),
        BUDGET,
        &exec,
    )
    .unwrap();
    assert!(v.holds);
    assert_eq!(v.element, 0);
}

#[test]
fn fiber_counts_are_a_conjugation_invariant_partition() {
    let exec = Exec::sequential();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [
        sym(3).unwrap(),
        sym(4).unwrap(),
        alt(4).unwrap(),
        dihedral(10).unwrap(),
        alt(5).unwrap(),
    ] {
        let g = en(g);
        for _ in 0..6 {
            let word = random_word(&mut rng, 5, 2);
            let d = fiber_distribution(&word, &g, BUDGET, &exec).unwrap();
            assert_eq!(d.total(), BigUint::from(g.order()).pow(d.arity as u32));
            assert_eq!(
                d.counts.iter().map(|&c| BigUint::from(c)).sum::<BigUint>(),
                d.total()
            );
            for x in 0..g.len() as u32 {
                for h in 0..g.len() as u32 {
                    assert_eq!(
                        d.counts[x as usize],
                        d.counts[g.conj_idx(x, h) as usize],
                        "{word}"
                    );
                }
            }
        }
    }
}

#[test]
fn coset_examples() {
    let exec = Exec::sequential();
    let odd = coset(SimpleSpec::Alt(5), 1, 0);
    let v = coset_value_set(&w("x^2"), std::slice::from_ref(&odd), BUDGET, &exec).unwrap();
    assert!(!v.is_constant());
    assert!(!is_coset_identity(&w("x^2"), std::slice::from_ref(&odd), BUDGET, &exec).unwrap());
    assert_eq!(coset_exponent(&odd, &exec), 12);
    let all =
        coset_value_set_full(&w("x"), std::slice::from_ref(&odd), BUDGET, 100, &exec).unwrap();
    assert_eq!(all.len(), 60);

    let c27 = coset(SimpleSpec::Psl2(27), 1, 1);
    assert_eq!(coset_exponent(&c27, &exec), 12);
    assert!(is_coset_identity(&w("x^12"), &[c27], BUDGET, &exec).unwrap());
    let c9 = coset(SimpleSpec::Psl2(9), 1, 1);
    assert_eq!(coset_exponent(&c9, &exec), 8);
    assert!(is_coset_identity(&w("x^8"), std::slice::from_ref(&c9), BUDGET, &exec).unwrap());
    assert!(matches!(
        coset_value_set(&w("x y"), &[c9.clone(), odd.clone()], BUDGET, &exec),
        Err(Error::MixedParents)
    ));
    assert!(coset_value_set(&w("x y"), &[c9], BUDGET, &exec).is_err());
}

#[test]
fn wmb_examples() {
    let exec = Exec::sequential();
    let r = wmb_refute(&w("x^12"), SimpleSpec::Psl2(27), BUDGET, &exec).unwrap();
    let witness = r.witness.unwrap();
    assert_eq!(witness.len(), 1);
    assert_eq!(witness[0].eps, 1);
    assert!([1, 2].contains(&witness[0].t));
    let r = wmb_refute(&w("x^2"), SimpleSpec::Alt(5), BUDGET, &exec).unwrap();
    assert_eq!((r.witness, r.tuples_checked), (None, 2));
    for spec in small_catalog() {
        let r = wmb_refute(&w("x y"), spec, BUDGET, &exec).unwrap();
        assert!(r.witness.is_none());
        let r = wmb_refute(&w("x y x^-1"), spec, BUDGET, &exec).unwrap();
        assert!(r.witness.is_none());
    }
}

#[test]
fn bad_scan_examples() {
    let exec = Exec::sequential();
    let r = bad_exponent_scan(12, &[SimpleSpec::Psl2(27)], &exec).unwrap();
    assert!(r.witnessed_bad());
    let r = bad_exponent_scan(8, &[SimpleSpec::Psl2(9)], &exec).unwrap();
    assert!(r.witnessed_bad());
    assert_eq!(r.bad, vec![8]);
    let r = bad_exponent_scan(
        15,
        &[
            SimpleSpec::Psl2(9),
            SimpleSpec::Psl2(27),
            SimpleSpec::Alt(5),
        ],
        &exec,
    )
    .unwrap();
    assert!(!r.witnessed_bad() && r.bad.is_empty());
    assert!(r.coset_exponents.iter().all(|(_, _, e)| e % 2 == 0));
    assert!(bad_exponent_scan(0, &[], &exec).is_err());
}

#[test]
fn power_words_are_coset_identities_exactly_at_multiples_of_the_exponent() {
    let exec = Exec::sequential();
    for spec in small_catalog() {
        let group = SimpleGroup::new(spec).unwrap();
        for outer in spec.outer_classes() {
            let c = group.coset(outer).unwrap();
            let oracle = c.members().fold(1u64, |acc, m| acc.lcm(&m.order()));
            assert_eq!(coset_exponent(&c, &exec), oracle);
            for e in 1..=30u64 {
                let word = w(&format!("x^{e}"));
                let id = is_coset_identity(&word, std::slice::from_ref(&c), BUDGET, &exec).unwrap();
                assert_eq!(id, e % oracle == 0, "{spec} {outer:?} e = {e}");
            }
        }
    }
}

#[test]
fn constant_coset_values_are_trivial() {
    let exec = Exec::with_threads(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(65);
    let specs = [SimpleSpec::Alt(5), SimpleSpec::Psl2(7)];
    let mut constants = 0;
    for _ in 0..500 {
        let spec = *specs.choose(&mut rng).unwrap();
        let word = random_word(&mut rng, 5, 3);
        let group = SimpleGroup::new(spec).unwrap();
        let outers = spec.outer_classes();
        let cosets: Vec<AutCoset> = (0..word.num_variables())
            .map(|_| group.coset(*outers.choose(&mut rng).unwrap()).unwrap())
            .collect();
        let v = coset_value_set(&word, &cosets, BUDGET, &exec).unwrap();
        if v.is_constant() {
            constants += 1;
            assert!(v.first.is_identity(), "{word} over {spec}");
        }
    }
    assert!(constants > 0);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let execs = [1, 2, 8].map(|t| Exec::with_threads(t).unwrap());
    let a5 = en(alt(5).unwrap());
    let word = w("x y x^-1 y^-1 x");
    let c27 = coset(SimpleSpec::Psl2(27), 1, 1);
    let s5 = sym(5).unwrap();
    let runs: Vec<_> = execs
        .iter()
        .map(|e| {
            (
                fiber_distribution(&word, &a5, BUDGET, e).unwrap(),
                coset_exponent(&c27, e),
                coset_value_set(&w("x^4 y"), &[c27.clone(), c27.clone()], BUDGET, e).unwrap(),
                fiber_estimate_perm(&word, &s5, 20_000, 9, e).unwrap(),
                fiber_estimate_enumerated(&word, &a5, 20_000, 9, e).unwrap(),
                identity_witness(&w("x^15"), &a5, BUDGET, e).unwrap(),
                wmb_refute(&w("x^12"), SimpleSpec::Psl2(27), BUDGET, e).unwrap(),
            )
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn fiber_estimates() {
    let exec = Exec::all_cores();
    let s5 = sym(5).unwrap();
    let est = fiber_estimate_perm(&w("x"), &s5, 10_000, 1, &exec).unwrap();
    let p = 1.0 / 120.0;
    assert!(
        (est.max_proportion() - p).abs()
            <= 3.0 * (p * (1.0 - p) / 1e4).sqrt() + 3.0 * est.radius(p)
    );
    let s3 = en(sym(3).unwrap());
    let est = fiber_estimate_enumerated(&w("x y x^-1 y^-1"), &s3, 100_000, 5, &exec).unwrap();
    assert!((est.identity_proportion() - 0.5).abs() < 0.01);
    assert_eq!(
        est,
        fiber_estimate_enumerated(&w("x y x^-1 y^-1"), &s3, 100_000, 5, &exec).unwrap()
    );
    assert!(fiber_estimate_enumerated(&w("x"), &s3, 0, 5, &exec).is_err());
}

#[test]
fn coordinate_decomposition_recomposes_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let bases: Vec<Vec<Permutation>> = [cyclic(5), sym(3), alt(4), alt(5)]
        .into_iter()
        .map(|g| en(g.unwrap()).permutations().unwrap().to_vec())
        .collect();
    for _ in 0..1000 {
        let elems = bases.choose(&mut rng).unwrap();
        let base = SymGroup {
            degree: elems[0].degree(),
        };
        let n = rng.gen_range(1..=4);
        let wr = WreathProduct::new(base, n);
        let word = random_word(&mut rng, 6, 3);
        if word.is_empty() {
            continue;
        }
        let d = word.num_variables();
        let top = |rng: &mut ChaCha8Rng| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            images.shuffle(rng);
            Permutation::from_images(images).unwrap()
        };
        let pick = |rng: &mut ChaCha8Rng| elems.choose(rng).unwrap().clone();
        let reps: Vec<WreathElement<Permutation>> = (0..d)
            .map(|_| wr.element((0..n).map(|_| pick(&mut rng)).collect(), top(&mut rng)))
            .collect();
        let s: Vec<Vec<Permutation>> = (0..d)
            .map(|_| (0..n).map(|_| pick(&mut rng)).collect())
            .collect();
        let system = coordinate_decomposition(&wr, &word, &reps).unwrap();
        assert_eq!(system.degree(), n);
        assert!(system.equations.iter().all(|eq| eq.len() == word.len()));

        let assign: BTreeMap<Variable, WreathElement<Permutation>> = word
            .variables()
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let comps = (0..n)
                    .map(|u| s[k][u].compose(&reps[k].components[u]))
                    .collect();
                (v, wr.element(comps, reps[k].top.clone()))
            })
            .collect();
        let direct = evaluate(&wr, &word, &assign).unwrap();
        assert_eq!(system.recompose(&base, &s), direct, "{word}");
    }
}

#[test]
fn decomposition_of_a_square_under_a_swap() {
    let base = SymGroup { degree: 5 };
    let wr = WreathProduct::new(base, 2);
    let id = Permutation::identity(5);
    let rep = wr.element(vec![id.clone(), id], p(2, "(1 2)"));
    let system = coordinate_decomposition(&wr, &w("x^2"), &[rep]).unwrap();
    for t in 0..2 {
        let coords: Vec<usize> = system.equations[t].iter().map(|f| f.coord).collect();
        assert_ne!(coords[0], coords[1]);
        assert_eq!(system.equation_word(t).num_variables(), 2);
    }
    assert!(system.top_value.is_identity());
    assert!(coordinate_decomposition(&wr, &Word::empty(), &[]).is_err());
}

#[test]
fn constants() {
    let c = c_rho_threshold(&BigRational::from_integer(1.into()), 1, 2).unwrap();
    assert!((c.value - 1.0).abs() < 1e-12);
    let c = c_rho_threshold(&BigRational::new(1.into(), 2.into()), 3, 60).unwrap();
    assert!(c.identity_holds(1e-9));
    assert!(c_rho_threshold(&BigRational::from_integer(2.into()), 1, 2).is_err());
    assert_eq!(ppb_lambda_bound(5, &BigUint::from(1u32)).unwrap(), 1.0);
    assert!((ppb_lambda_bound(60, &BigUint::from(60u32)).unwrap() - 61.0).abs() < 1e-9);
    assert!((ppb_lambda_bound(1, &BigUint::from(60u32).pow(4)).unwrap() - 5.0).abs() < 1e-9);
}

/// In `A ≀ C_n` with `A ≥ S` acting on blocks of size `m`, every cycle of
/// length `ℓ` of the block action carries a coset of `S` on which `x^{e/ℓ}`
/// is an identity.
#[test]
fn block_cycle_lengths_divide_the_exponent() {
    let exec = Exec::sequential();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fixtures = [
        (alt(5).unwrap(), 30u64, SimpleSpec::Alt(5), 2usize),
        (sym(5).unwrap(), 60, SimpleSpec::Alt(5), 2),
        (alt(5).unwrap(), 30, SimpleSpec::Alt(5), 3),
        (pgammal2(9).unwrap(), 0, SimpleSpec::Psl2(9), 2),
    ];
    for (a, a_exp, spec, n) in fixtures {
        let a_exp = if a_exp == 0 {
            en(a.clone()).exponent()
        } else {
            a_exp
        };
        let m = a.degree();
        let h = wreath_product(&a, n, &cyclic(n).unwrap()).unwrap();
        let e = n as u64 * a_exp;
        for _ in 0..40 {
            let x = h.random_element(&mut rng);
            assert!(x.pow(e as i64).is_identity());
            let block = |pt: u32| pt as usize / m;
            let mut seen = vec![false; n];
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut b = start;
                while !seen[b] {
                    seen[b] = true;
                    b = block(x.image((b * m) as u32));
                    len += 1;
                }
                let xl = x.pow(len as i64);
                let beta = Permutation::from_images(
                    (0..m as u32)
                        .map(|y| xl.image((start * m) as u32 + y) - (start * m) as u32)
                        .collect(),
                )
                .unwrap();
                let outer = coset_class_of(spec, &beta).unwrap();
                let c = SimpleGroup::new(spec).unwrap().coset(outer).unwrap();
                let word = w(&format!("x^{}", e / len as u64));
                assert!(is_coset_identity(&word, &[c], BUDGET, &exec).unwrap());
            }
        }
    }
}
