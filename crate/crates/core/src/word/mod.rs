//! Reduced words in free groups.
//!
//! A [`Word`] is a freely reduced sequence of signed [`Variable`]s. Variables
//! carry a base index `k` (standing for `X_k`) and an optional split index
//! added when a variation splits the occurrences of `X_k` apart.

mod parse;
mod variation;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use variation::{bell_number, VariationIter, DEFAULT_VARIATION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    base: u32,
    split: Option<u32>,
}

impl Variable {
    pub fn new(base: u32) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidArgument(
                "variable base index must be >= 1".into(),
            ));
        }
        Ok(Variable { base, split: None })
    }

    pub fn with_split(base: u32, split: u32) -> Result<Self> {
        if base == 0 || split == 0 {
            return Err(Error::InvalidArgument(
                "variable base and split indices must be >= 1".into(),
            ));
        }
        Ok(Variable {
            base,
            split: Some(split),
        })
    }

    pub(crate) fn raw(base: u32, split: Option<u32>) -> Self {
        debug_assert!(base >= 1 && split.is_none_or(|s| s >= 1));
        Variable { base, split }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn split(&self) -> Option<u32> {
        self.split
    }

    pub fn unsplit(&self) -> Variable {
        Variable {
            base: self.base,
            split: None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.split {
            None => write!(f, "x{}", self.base),
            Some(s) => write!(f, "x{}_{}", self.base, s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub var: Variable,
    pub sign: Sign,
}

impl Letter {
    pub fn new(var: Variable, sign: Sign) -> Self {
        Letter { var, sign }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            var: self.var,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.var == other.var && self.sign != other.sign
    }
}

/// A freely reduced word. The empty word is a valid value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    /// `var^e`, expanded.
    pub fn power(var: Variable, e: i64) -> Self {
        let sign = if e >= 0 { Sign::Pos } else { Sign::Neg };
        Word {
            letters: vec![Letter::new(var, sign); e.unsigned_abs() as usize],
        }
    }

    /// The commutator `a b a^-1 b^-1` of two distinct variables.
    pub fn commutator(a: Variable, b: Variable) -> Self {
        Word::from_letters([
            Letter::new(a, Sign::Pos),
            Letter::new(b, Sign::Pos),
            Letter::new(a, Sign::Neg),
            Letter::new(b, Sign::Neg),
        ])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// Distinct variables, in `(base, split)` order.
    pub fn variables(&self) -> Vec<Variable> {
        self.letters
            .iter()
            .map(|l| l.var)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn num_variables(&self) -> usize {
        self.variables().len()
    }

    /// Distinct base indices, ascending.
    pub fn bases(&self) -> Vec<u32> {
        self.letters
            .iter()
            .map(|l| l.var.base)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Number of occurrences of `v`, ignoring signs.
    pub fn multiplicity(&self, v: Variable) -> usize {
        self.letters.iter().filter(|l| l.var == v).count()
    }

    /// Number of occurrences of base `X_k`, ignoring split indices and signs.
    pub fn base_multiplicity(&self, base: u32) -> usize {
        self.letters.iter().filter(|l| l.var.base == base).count()
    }

    pub fn is_repetition_free(&self) -> bool {
        self.variables()
            .into_iter()
            .all(|v| self.multiplicity(v) == 1)
    }

    /// Drops every split index.
    pub fn erase_splits(&self) -> Word {
        Word::from_letters(
            self.letters
                .iter()
                .map(|l| Letter::new(l.var.unsplit(), l.sign)),
        )
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange(format!(
                "position {i} outside 1..={}",
                self.len()
            )));
        }
        Ok(())
    }

    /// The prefix `I_i(w)` (1-based `i`): the letters before position `i`,
    /// extended through `i` itself when that letter is inverted.
    pub fn initial_segment(&self, i: usize) -> Result<Word> {
        self.check_position(i)?;
        let end = match self.letters[i - 1].sign {
            Sign::Pos => i - 1,
            Sign::Neg => i,
        };
        Ok(Word {
            letters: self.letters[..end].to_vec(),
        })
    }

    /// `Δ_{i,j}(w) = I_i(w)^{-1} I_j(w)` for `1 <= i < j <= len`.
    pub fn delta_segment(&self, i: usize, j: usize) -> Result<Word> {
        self.check_position(i)?;
        self.check_position(j)?;
        if i >= j {
            return Err(Error::InvalidArgument(format!(
                "segment needs i < j, got i = {i}, j = {j}"
            )));
        }
        let a = self.initial_segment(i)?;
        let b = self.initial_segment(j)?;
        Ok(a.inverse().concat(&b))
    }

    /// Strips conjugating letters `x … x^-1` from both ends.
    pub fn cyclic_reduce(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: self.letters[lo..hi].to_vec(),
        }
    }

    /// 0-based start of `seg` as a contiguous run of letters, if present.
    pub fn find_segment(&self, seg: &Word) -> Option<usize> {
        if seg.is_empty() {
            return Some(0);
        }
        self.letters
            .windows(seg.len())
            .position(|w| w == seg.letters.as_slice())
    }

    /// Variable slots and a flat letter program for fast evaluation.
    pub fn compile(&self) -> CompiledWord {
        let slots = self.variables();
        let code = self
            .letters
            .iter()
            .map(|l| {
                let slot = slots.binary_search(&l.var).expect("variable listed") as u32;
                (slot, l.sign == Sign::Neg)
            })
            .collect();
        CompiledWord { slots, code }
    }

    /// Relabels variables through `f`, then reduces.
    pub fn map_variables<F: FnMut(Variable) -> Variable>(&self, mut f: F) -> Word {
        Word::from_letters(self.letters.iter().map(|l| Letter::new(f(l.var), l.sign)))
    }
}

/// A word flattened to `(slot, inverted)` pairs, slots indexing
/// [`CompiledWord::slots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledWord {
    pub slots: Vec<Variable>,
    pub code: Vec<(u32, bool)>,
}

impl CompiledWord {
    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    /// Which slots occur inverted at least once.
    pub fn inverted_slots(&self) -> Vec<bool> {
        let mut inv = vec![false; self.slots.len()];
        for &(s, neg) in &self.code {
            if neg {
                inv[s as usize] = true;
            }
        }
        inv
    }
}

impl fmt::Display for Word {
    /// Canonical form: runs of one letter are written as powers, the empty
    /// word as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = run as i64 * l.sign.as_i8() as i64;
            if e == 1 {
                write!(f, "{}", l.var)?;
            } else {
                write!(f, "{}^{}", l.var, e)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    parse::parse_word(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn x(k: u32) -> Variable {
        Variable::new(k).unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(w("x y x^-1 y^-1").multiplicity(x(1)), 2);
        assert_eq!(w("x^8").multiplicity(x(1)), 8);
        assert_eq!(w("x^2 y").multiplicity(x(3)), 0);
    }

    #[test]
    fn repetition_free() {
        assert!(w("x y z").is_repetition_free());
        assert!(!w("x y x^-1").is_repetition_free());
        assert!(Word::empty().is_repetition_free());
    }

    #[test]
    fn initial_segments() {
        let sq = w("x^2");
        assert_eq!(sq.initial_segment(1).unwrap(), Word::empty());
        assert_eq!(sq.initial_segment(2).unwrap(), w("x"));
        let u = w("x^-1 y x");
        assert_eq!(u.initial_segment(1).unwrap(), w("x^-1"));
        assert!(u.initial_segment(0).is_err());
        assert!(u.initial_segment(4).is_err());
    }

    #[test]
    fn delta_segments() {
        assert_eq!(w("x^2").delta_segment(1, 2).unwrap(), w("x"));
        assert_eq!(w("x^-1 y x").delta_segment(1, 2).unwrap(), Word::empty());
        let c = w("x y x^-1");
        assert_eq!(c.delta_segment(1, 3).unwrap(), c);
        assert!(c.delta_segment(2, 2).is_err());
        assert!(c.delta_segment(3, 1).is_err());
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w("x y x^-1").cyclic_reduce(), w("x2"));
        let comm = w("x y x^-1 y^-1");
        assert_eq!(comm.cyclic_reduce(), comm);
        assert_eq!(w("x y z y^-1 x^-1").cyclic_reduce(), w("x3"));
        assert_eq!(Word::empty().cyclic_reduce(), Word::empty());
    }

    #[test]
    fn display_compresses_runs() {
        assert_eq!(w("x^8").to_string(), "x1^8");
        assert_eq!(w("x y^-2 x").to_string(), "x1 x2^-2 x1");
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!(w("x_1 x_2").to_string(), "x1_1 x1_2");
    }

    #[test]
    fn compile_slots() {
        let c = w("y x y^-1").compile();
        assert_eq!(c.slots, vec![x(1), x(2)]);
        assert_eq!(c.code, vec![(0, false), (1, false), (0, true)]);
    }
}
