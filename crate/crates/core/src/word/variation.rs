//! Variations: the words obtained by giving every occurrence of each base
//! variable a second index.
//!
//! Second indices are arbitrary labels, so a variation is determined by a set
//! partition of each base variable's occurrence positions. We enumerate one
//! representative per partition: split indices are numbered by first
//! appearance (restricted growth strings), bases are taken in ascending order
//! with the smallest base varying slowest, and each base's partitions appear
//! in lexicographic order of their growth strings. The first variation is the
//! all-ones labelling.

use super::{Letter, Variable, Word};
use crate::error::{Error, Result};

pub const DEFAULT_VARIATION_CAP: usize = 12;

/// Iterator over canonical variations of a word.
pub struct VariationIter {
    template: Vec<Letter>,
    positions: Vec<Vec<usize>>,
    rgs: Vec<Vec<u32>>,
    done: bool,
}

impl VariationIter {
    pub fn new(word: &Word, cap: usize) -> Result<Self> {
        if word.len() > cap {
            return Err(Error::CapExceeded {
                what: "variation word length",
                limit: cap as u64,
                reached: word.len() as u64,
            });
        }
        let bases = word.bases();
        let positions: Vec<Vec<usize>> = bases
            .iter()
            .map(|&b| {
                word.letters()
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l.var.base() == b)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let rgs = positions.iter().map(|p| vec![0; p.len()]).collect();
        Ok(VariationIter {
            template: word.letters().to_vec(),
            positions,
            rgs,
            done: false,
        })
    }

    fn current(&self) -> Word {
        let mut letters = self.template.clone();
        for (pos, labels) in self.positions.iter().zip(&self.rgs) {
            for (&p, &label) in pos.iter().zip(labels) {
                let base = letters[p].var.base();
                letters[p].var = Variable::raw(base, Some(label + 1));
            }
        }
        Word { letters }
    }

    fn advance(&mut self) -> bool {
        for labels in self.rgs.iter_mut().rev() {
            if next_rgs(labels) {
                return true;
            }
            labels.iter_mut().for_each(|l| *l = 0);
        }
        false
    }
}

impl Iterator for VariationIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let out = self.current();
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

/// Next restricted growth string in lexicographic order; false when exhausted.
fn next_rgs(a: &mut [u32]) -> bool {
    let n = a.len();
    if n <= 1 {
        return false;
    }
    let mut prefix_max = vec![0u32; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
    }
    for i in (1..n).rev() {
        if a[i] <= prefix_max[i] {
            a[i] += 1;
            for v in &mut a[i + 1..] {
                *v = 0;
            }
            return true;
        }
    }
    false
}

/// Bell numbers by the Bell triangle.
pub fn bell_number(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

impl Word {
    /// Every canonical variation (see module docs). Errors when the word is
    /// longer than `cap`.
    pub fn variations(&self, cap: usize) -> Result<VariationIter> {
        VariationIter::new(self, cap)
    }

    pub fn enumerate_variations(&self) -> Result<Vec<Word>> {
        Ok(self.variations(DEFAULT_VARIATION_CAP)?.collect())
    }

    /// Variations with strictly more distinct variables than `self` has bases.
    pub fn proper_variations(&self) -> Result<Vec<Word>> {
        let d = self.bases().len();
        Ok(self
            .variations(DEFAULT_VARIATION_CAP)?
            .filter(|v| v.num_variables() > d)
            .collect())
    }

    /// Variations whose letters at 1-based positions `i < j` (same base
    /// variable) receive different split indices.
    pub fn split_variations(&self, i: usize, j: usize) -> Result<Vec<Word>> {
        self.split_variations_capped(i, j, DEFAULT_VARIATION_CAP)
    }

    pub fn split_variations_capped(&self, i: usize, j: usize, cap: usize) -> Result<Vec<Word>> {
        self.check_position(i)?;
        self.check_position(j)?;
        if i >= j {
            return Err(Error::InvalidArgument(format!(
                "split positions need i < j, got {i}, {j}"
            )));
        }
        let (a, b) = (self.letters[i - 1], self.letters[j - 1]);
        if a.var.base() != b.var.base() {
            return Err(Error::InvalidArgument(format!(
                "positions {i} and {j} carry different variables ({} vs {})",
                a.var.unsplit(),
                b.var.unsplit()
            )));
        }
        Ok(self
            .variations(cap)?
            .filter(|v| v.letters[i - 1].var != v.letters[j - 1].var)
            .collect())
    }
}
