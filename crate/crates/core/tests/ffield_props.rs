use std::collections::BTreeSet;

use nslen_core::ffield::{FieldElement, FieldSpec};
use proptest::prelude::*;

const ORDERS: [u64; 16] = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49, 64, 81, 125];

fn field(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).unwrap()
}

fn elem(f: &FieldSpec, r: u32) -> FieldElement {
    f.from_rep(r % f.order()).unwrap()
}

#[test]
fn construction_examples() {
    let f4 = FieldSpec::new(2, 2).unwrap();
    assert_eq!(f4.modulus(), &[1, 1, 1]);
    assert_eq!(f4.pow(f4.xi(), 3).unwrap(), f4.one());
    assert_eq!(f4.add(f4.xi(), f4.xi()), f4.zero());
    assert_eq!(f4.frobenius(f4.xi(), 1), f4.add(f4.xi(), f4.one()));

    let f3 = FieldSpec::new(3, 1).unwrap();
    assert_eq!(f3.xi(), f3.from_int(2));
    assert_eq!(f3.inv(f3.from_int(2)).unwrap(), f3.from_int(2));
    assert!(!f3.is_square(f3.from_int(-1)));

    let f9 = FieldSpec::new(3, 2).unwrap();
    let minus_one = f9.neg(f9.one());
    assert_eq!(f9.xi_pow(4), minus_one);
    assert!(f9.is_square(minus_one));

    let f27 = FieldSpec::new(3, 3).unwrap();
    assert_eq!(f27.order() - 1, 26);
    assert!(!f27.is_square(f27.neg(f27.one())));
    assert_eq!(f27.frobenius(f27.xi(), 1), f27.xi_pow(3));

    assert!(FieldSpec::new(4, 1).is_err());
    assert!(FieldSpec::new(2, 21).is_err());
    assert!(f3.inv(f3.zero()).is_err());
}

#[test]
fn multiplicative_group_is_cyclic() {
    for q in ORDERS {
        let f = field(q);
        let powers: BTreeSet<FieldElement> = (0..q as i64 - 1).map(|k| f.xi_pow(k)).collect();
        assert_eq!(powers.len() as u64, q - 1, "q = {q}");
        assert!(!powers.contains(&f.zero()));
        for a in f.elements().filter(|a| !a.is_zero()) {
            assert_eq!(f.pow(a, q as i64 - 1).unwrap(), f.one());
        }
    }
}

#[test]
fn squares_have_index_two_in_odd_characteristic() {
    for q in ORDERS {
        let f = field(q);
        let nonzero_squares = f
            .elements()
            .filter(|a| !a.is_zero() && f.is_square(*a))
            .count() as u64;
        let by_squaring: BTreeSet<FieldElement> = f
            .elements()
            .filter(|a| !a.is_zero())
            .map(|a| f.mul(a, a))
            .collect();
        assert_eq!(by_squaring.len() as u64, nonzero_squares);
        let expected = if q % 2 == 1 { (q - 1) / 2 } else { q - 1 };
        assert_eq!(nonzero_squares, expected, "q = {q}");
    }
}

#[test]
fn frobenius_has_order_f() {
    for q in ORDERS {
        let f = field(q);
        for a in f.elements() {
            assert_eq!(f.frobenius(a, f.degree()), a);
            let p = f.characteristic() as i64;
            assert_eq!(f.frobenius(a, 1), f.pow(a, p).unwrap_or(f.zero()));
        }
    }
}

/// Base-`p` digits of a polynomial code, constant term first.
fn digits(f: &FieldSpec, mut code: u32) -> Vec<u32> {
    let p = f.characteristic();
    (0..f.degree())
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn code_of(f: &FieldSpec, d: &[u32]) -> u32 {
    d.iter()
        .rev()
        .fold(0, |acc, &x| acc * f.characteristic() + x)
}

/// Schoolbook product modulo the field's modulus.
fn poly_mul(f: &FieldSpec, a: u32, b: u32) -> u32 {
    let p = f.characteristic();
    let n = f.degree() as usize;
    let (a, b) = (digits(f, a), digits(f, b));
    let mut prod = vec![0u32; 2 * n];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    let m = f.modulus();
    for k in (n..2 * n).rev() {
        let c = prod[k];
        for i in 0..=n {
            prod[k - n + i] = (prod[k - n + i] + (p - c) * m[i]) % p;
        }
    }
    code_of(f, &prod[..n])
}

proptest! {
    #[test]
    fn tables_agree_with_polynomial_arithmetic(qi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>()) {
        let f = field(ORDERS[qi]);
        let (a, b) = (elem(&f, a), elem(&f, b));
        let (ca, cb) = (f.poly_code(a), f.poly_code(b));
        let sum: Vec<u32> = digits(&f, ca).iter().zip(digits(&f, cb)).map(|(x, y)| (x + y) % f.characteristic()).collect();
        prop_assert_eq!(f.poly_code(f.add(a, b)), code_of(&f, &sum));
        prop_assert_eq!(f.poly_code(f.mul(a, b)), poly_mul(&f, ca, cb));
    }

    #[test]
    fn field_axioms(qi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(ORDERS[qi]);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(qi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), t in 0u32..8) {
        let f = field(ORDERS[qi]);
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(f.frobenius(f.add(a, b), t), f.add(f.frobenius(a, t), f.frobenius(b, t)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), t), f.mul(f.frobenius(a, t), f.frobenius(b, t)));
    }
}
