use std::collections::BTreeSet;

use nslen_core::word::bell_number;
use nslen_core::{parse_word, Error, Letter, Sign, Variable, Word};
use proptest::prelude::*;

fn w(s: &str) -> Word {
    parse_word(s).unwrap()
}

/// Set partitions of `0..n` as restricted growth strings, by plain recursion.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let blocks = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=blocks {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn letters() -> impl Strategy<Value = Vec<(u32, bool)>> {
    prop::collection::vec((1u32..=3, any::<bool>()), 0..=6)
}

fn word_of(spec: &[(u32, bool)]) -> Word {
    Word::from_letters(spec.iter().map(|&(b, pos)| {
        Letter::new(
            Variable::new(b).unwrap(),
            if pos { Sign::Pos } else { Sign::Neg },
        )
    }))
}

#[test]
fn parsing_examples() {
    assert_eq!(w("x1 x1^-1 x2").to_string(), "x2");
    assert_eq!(w("x^8").len(), 8);
    assert_eq!(w("x y x^-1 y^-1").len(), 4);
    assert_eq!(w("a*b^2").len(), 3);
    assert!(matches!(parse_word("x^0"), Err(Error::ZeroExponent { .. })));
    assert!(matches!(parse_word("x ^"), Err(Error::Syntax { .. })));
}

#[test]
fn multiplicities() {
    let x = Variable::new(1).unwrap();
    assert_eq!(w("x y x^-1 y^-1").multiplicity(x), 2);
    assert_eq!(w("x^8").multiplicity(x), 8);
    assert_eq!(w("x^2 y").multiplicity(Variable::new(3).unwrap()), 0);
    assert!(w("x y z").is_repetition_free());
    assert!(!w("x y x^-1").is_repetition_free());
    assert!(Word::empty().is_repetition_free());
}

#[test]
fn initial_segments() {
    assert_eq!(w("x^2").initial_segment(1).unwrap(), Word::empty());
    assert_eq!(w("x^2").initial_segment(2).unwrap(), w("x"));
    assert_eq!(w("x^-1 y x").initial_segment(1).unwrap(), w("x^-1"));
    assert!(w("x^2").initial_segment(3).is_err());
    assert!(w("x^2").initial_segment(0).is_err());
}

#[test]
fn delta_segment_cases() {
    assert_eq!(w("x^2").delta_segment(1, 2).unwrap(), w("x"));
    assert_eq!(w("x^-1 y x").delta_segment(1, 2).unwrap(), Word::empty());
    assert_eq!(w("x y x^-1").delta_segment(1, 3).unwrap(), w("x y x^-1"));
    assert!(w("x y").delta_segment(2, 1).is_err());
    assert!(w("x y").delta_segment(1, 3).is_err());
}

#[test]
fn variation_examples() {
    assert_eq!(w("x^2").enumerate_variations().unwrap().len(), 2);
    assert_eq!(w("x^3").enumerate_variations().unwrap().len(), 5);
    assert_eq!(w("x y").enumerate_variations().unwrap().len(), 1);
    assert_eq!(w("x^2").proper_variations().unwrap().len(), 1);
    assert_eq!(w("x^3").proper_variations().unwrap().len(), 4);
    assert!(w("x y").proper_variations().unwrap().is_empty());
    assert_eq!(w("x^2").split_variations(1, 2).unwrap().len(), 1);
    assert_eq!(w("x^3").split_variations(1, 2).unwrap().len(), 3);
    assert_eq!(w("x y x^-1 y^-1").split_variations(1, 3).unwrap().len(), 2);
    assert!(w("x y x^-1 y^-1").split_variations(1, 2).is_err());
}

#[test]
fn cyclic_reduction() {
    assert_eq!(w("x y x^-1").cyclic_reduce(), w("x2"));
    assert_eq!(w("x y x^-1 y^-1").cyclic_reduce(), w("x y x^-1 y^-1"));
    assert_eq!(w("x y z y^-1 x^-1").cyclic_reduce(), w("x3"));
}

#[test]
fn bell_numbers_match_partition_enumerator() {
    for n in 0..=8 {
        assert_eq!(bell_number(n), partitions(n).len() as u128);
    }
}

#[test]
fn variation_counts_up_to_length_six() {
    // Every word of length <= 6 over two variables, both signs.
    let mut seen = 0;
    for len in 0..=6u32 {
        for code in 0..4u32.pow(len) {
            let spec: Vec<(u32, bool)> = (0..len)
                .map(|k| {
                    let c = (code >> (2 * k)) & 3;
                    (1 + (c >> 1), c & 1 == 1)
                })
                .collect();
            let word = word_of(&spec);
            if word.len() != len as usize {
                continue;
            }
            let expected: usize = word
                .bases()
                .iter()
                .map(|&b| partitions(word.base_multiplicity(b)).len())
                .product();
            assert_eq!(
                word.enumerate_variations().unwrap().len(),
                expected,
                "{word}"
            );
            seen += 1;
        }
    }
    assert!(seen > 1000);
}

proptest! {
    #[test]
    fn outputs_are_reduced(spec in letters()) {
        let word = word_of(&spec);
        prop_assert!(word.is_reduced());
        prop_assert_eq!(Word::from_letters(word.letters().iter().copied()), word.clone());
        prop_assert!(word.inverse().is_reduced());
        prop_assert!(word.cyclic_reduce().is_reduced());
        for i in 1..=word.len() {
            prop_assert!(word.initial_segment(i).unwrap().is_reduced());
            for j in i + 1..=word.len() {
                prop_assert!(word.delta_segment(i, j).unwrap().is_reduced());
            }
        }
    }

    #[test]
    fn delta_is_a_segment(spec in letters()) {
        let word = word_of(&spec);
        let l = word.letters();
        for i in 1..=word.len() {
            for j in i + 1..=word.len() {
                let d = word.delta_segment(i, j).unwrap();
                prop_assert!(word.find_segment(&d).is_some(), "{} not in {}", d, word);
                if l[i - 1].var == l[j - 1].var {
                    prop_assert!(!d.is_empty());
                }
                let empty_case = j == i + 1 && l[i - 1].sign == Sign::Neg && l[j - 1].sign == Sign::Pos;
                prop_assert_eq!(d.is_empty(), empty_case);
                let whole_case = i == 1 && j == word.len() && l[0].sign == Sign::Pos && l[j - 1].sign == Sign::Neg;
                prop_assert_eq!(d == word, whole_case);
            }
        }
    }

    #[test]
    fn variations_map_back(spec in letters()) {
        let word = word_of(&spec);
        let vars = word.enumerate_variations().unwrap();
        let distinct: BTreeSet<&Word> = vars.iter().collect();
        prop_assert_eq!(distinct.len(), vars.len());
        for v in &vars {
            prop_assert!(v.is_reduced());
            prop_assert_eq!(v.erase_splits(), word.clone());
        }
        let d = word.bases().len();
        let proper = word.proper_variations().unwrap();
        prop_assert_eq!(proper.len(), vars.iter().filter(|v| v.num_variables() > d).count());
    }

    #[test]
    fn split_variations_separate_positions(spec in letters()) {
        let word = word_of(&spec);
        let l = word.letters();
        for i in 1..=word.len() {
            for j in i + 1..=word.len() {
                let res = word.split_variations(i, j);
                if l[i - 1].var != l[j - 1].var {
                    prop_assert!(res.is_err());
                    continue;
                }
                for v in res.unwrap() {
                    prop_assert_ne!(v.letters()[i - 1].var, v.letters()[j - 1].var);
                    prop_assert_eq!(v.erase_splits(), word.clone());
                }
            }
        }
    }

    #[test]
    fn display_round_trips(spec in letters()) {
        let word = word_of(&spec);
        let text = word.to_string();
        if !word.is_empty() {
            prop_assert_eq!(parse_word(&text).unwrap(), word);
        }
    }
}
