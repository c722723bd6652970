use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}`, printed 1-based in disjoint-cycle form.
///
/// Products compose right to left: `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 1-based disjoint or overlapping cycles;
    /// cycles are applied right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut c = Permutation::identity(degree);
            let mut seen = std::collections::HashSet::new();
            for &p in cycle {
                if p == 0 || p as usize > degree {
                    return Err(Error::InvalidArgument(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                if !seen.insert(p) {
                    return Err(Error::InvalidArgument(format!(
                        "point {p} repeated in a cycle"
                    )));
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                c.images[p as usize - 1] = next - 1;
            }
            result = c.compose(&result);
        }
        Ok(result)
    }

    /// Parses `()`, `(1 2)(3 4 5)` or `(1,2)(3,4,5)`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::syntax(0, "empty permutation"));
        }
        let offset = |r: &str| text.len() - text.trim_start().len() + (text.trim().len() - r.len());
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::syntax(offset(rest), "expected '('"));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::syntax(offset(rest), "unclosed cycle"))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::syntax(offset(rest), format!("bad point '{tok}'")))?;
                cycle.push(v);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    /// Writes `self ∘ other` into `out`.
    pub fn compose_into(&self, other: &Permutation, out: &mut Permutation) {
        out.images.clear();
        out.images
            .extend(other.images.iter().map(|&x| self.images[x as usize]));
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `g self g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        result
    }

    /// Lengths of all cycles, fixed points included, in order of smallest point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Element order; panics if it does not fit in 64 bits (degrees in the
    /// thousands), use [`Permutation::order_big`] there.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| {
            let l = l as u64;
            (acc / acc.gcd(&l))
                .checked_mul(l)
                .expect("permutation order exceeds u64")
        })
    }

    pub fn order_big(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Number of moved points.
    pub fn support(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .count()
    }

    pub fn fixed_points(&self) -> usize {
        self.degree() - self.support()
    }

    /// Moved points, 0-based ascending.
    pub fn support_set(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
            .collect()
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    /// The same permutation on `degree >= self.degree()` points.
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Acts on `self.degree() .. self.degree()+other.degree()` by `other`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + n));
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
