//! Subgroups of enumerated groups, stored as member sets plus generators.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::EnumeratedGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<bool>,
    elems: Vec<u32>,
    gens: Vec<u32>,
}

impl Subgroup {
    pub fn trivial(g: &EnumeratedGroup) -> Self {
        let mut members = vec![false; g.len()];
        members[0] = true;
        Subgroup {
            members,
            elems: vec![0],
            gens: Vec::new(),
        }
    }

    pub fn whole(g: &EnumeratedGroup) -> Self {
        Subgroup {
            members: vec![true; g.len()],
            elems: (0..g.len() as u32).collect(),
            gens: g.gens().to_vec(),
        }
    }

    pub fn generated(g: &EnumeratedGroup, gens: &[u32]) -> Self {
        let mut h = Subgroup::trivial(g);
        for &x in gens {
            h.add_generator(g, x);
        }
        h
    }

    /// Validates that `elems` is closed under multiplication.
    pub fn from_elements(g: &EnumeratedGroup, elems: &[u32]) -> Result<Self> {
        let mut members = vec![false; g.len()];
        for &x in elems {
            *members.get_mut(x as usize).ok_or(Error::NotSubgroup)? = true;
        }
        if !members[0] {
            return Err(Error::NotSubgroup);
        }
        for &a in elems {
            for &b in elems {
                if !members[g.mul_idx(a, b) as usize] {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        let h = Subgroup::generated(g, elems);
        debug_assert_eq!(h.order() as usize, members.iter().filter(|&&m| m).count());
        Ok(h)
    }

    /// Adds `x` to the generators and closes up. No-op when `x` is a member.
    pub fn add_generator(&mut self, g: &EnumeratedGroup, x: u32) {
        if self.members[x as usize] {
            return;
        }
        self.gens.push(x);
        let mut head = 0;
        while head < self.elems.len() {
            let a = self.elems[head];
            for &s in &self.gens {
                let b = g.mul_idx(a, s);
                if !self.members[b as usize] {
                    self.members[b as usize] = true;
                    self.elems.push(b);
                }
            }
            head += 1;
        }
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.members[x as usize]
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn is_normalized_by(&self, g: &EnumeratedGroup, conjugators: &[u32]) -> bool {
        conjugators
            .iter()
            .all(|&c| self.gens.iter().all(|&x| self.contains(g.conj_idx(x, c))))
    }

    pub fn is_normal(&self, g: &EnumeratedGroup) -> bool {
        self.is_normalized_by(g, g.gens())
    }

    /// Smallest subgroup containing `seeds` and closed under conjugation by
    /// `conjugators`.
    pub fn normal_closure(g: &EnumeratedGroup, conjugators: &[u32], seeds: &[u32]) -> Subgroup {
        let mut h = Subgroup::generated(g, seeds);
        loop {
            let mut grew = false;
            let mut i = 0;
            while i < h.gens.len() {
                let x = h.gens[i];
                for &c in conjugators {
                    let y = g.conj_idx(x, c);
                    if !h.contains(y) {
                        h.add_generator(g, y);
                        grew = true;
                    }
                }
                i += 1;
            }
            if !grew {
                return h;
            }
        }
    }

    pub fn join(&self, g: &EnumeratedGroup, other: &Subgroup) -> Subgroup {
        let mut h = self.clone();
        for &x in &other.gens {
            h.add_generator(g, x);
        }
        h
    }

    /// The commutator subgroup `[H, H]`.
    pub fn derived(&self, g: &EnumeratedGroup) -> Subgroup {
        let mut seeds = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                let c = g.commutator_idx(a, b);
                if c != 0 {
                    seeds.push(c);
                }
            }
        }
        Subgroup::normal_closure(g, &self.gens, &seeds)
    }

    /// `H = H⁽⁰⁾ ≥ H⁽¹⁾ ≥ …` down to the first repeated term.
    pub fn derived_series(&self, g: &EnumeratedGroup) -> Vec<Subgroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived(g);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self, g: &EnumeratedGroup) -> bool {
        self.derived_series(g).last().unwrap().is_trivial()
    }

    pub fn exponent(&self, g: &EnumeratedGroup) -> u64 {
        self.elems
            .iter()
            .fold(1u64, |acc, &x| num_integer::lcm(acc, g.order_of(x) as u64))
    }

    /// `(order, count)` pairs of element orders, ascending.
    pub fn order_statistics(&self, g: &EnumeratedGroup) -> Vec<(u32, u64)> {
        let mut counts = std::collections::BTreeMap::new();
        for &x in &self.elems {
            *counts.entry(g.order_of(x)).or_insert(0u64) += 1;
        }
        counts.into_iter().collect()
    }

    /// Is this subgroup simple (no proper nontrivial subgroup normal in it)?
    pub fn is_simple(&self, g: &EnumeratedGroup) -> bool {
        if self.is_trivial() {
            return false;
        }
        class_representatives(g, self.elements(), &self.gens)
            .into_iter()
            .filter(|&(x, _)| x != 0)
            .all(|(x, _)| Subgroup::normal_closure(g, &self.gens, &[x]).order() == self.order())
    }
}

/// Representatives and sizes of the orbits of `conjugators` acting by
/// conjugation on `elems` (a set closed under that action), in order of
/// smallest element.
pub fn class_representatives(
    g: &EnumeratedGroup,
    elems: &[u32],
    conjugators: &[u32],
) -> Vec<(u32, usize)> {
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for &x in &sorted {
        if seen[x as usize] {
            continue;
        }
        seen[x as usize] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            for &c in conjugators {
                let z = g.conj_idx(y, c);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orbit.push(z);
                }
            }
            head += 1;
        }
        out.push((x, orbit.len()));
    }
    out
}

/// `G/N` with cosets `gN` numbered in order of their smallest member; the trivial
/// quotient of `G` by 1 is `G` itself.
pub fn quotient_enumerated(g: &Arc<EnumeratedGroup>, n: &Subgroup) -> Result<Arc<EnumeratedGroup>> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    if n.is_trivial() {
        return Ok(Arc::clone(g));
    }
    let mut coset_of = vec![u32::MAX; g.len()];
    let mut reps = Vec::new();
    for x in 0..g.len() as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in n.elements() {
            coset_of[g.mul_idx(x, m) as usize] = id;
        }
    }
    let mut gens: Vec<u32> = g
        .gens()
        .iter()
        .map(|&s| coset_of[s as usize])
        .filter(|&c| c != 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    Ok(Arc::new(EnumeratedGroup::from_quotient(
        Arc::clone(g),
        reps,
        coset_of,
        gens,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_enumerated, Permutation};

    fn group(n: usize, gens: &[&str]) -> Arc<EnumeratedGroup> {
        let gens: Vec<_> = gens
            .iter()
            .map(|s| Permutation::parse(n, s).unwrap())
            .collect();
        Arc::new(generate_enumerated(n, &gens, 1_000_000).unwrap())
    }

    #[test]
    fn normal_closure_of_three_cycle_in_sym3() {
        let g = group(3, &["(1 2)", "(1 2 3)"]);
        let c = g
            .index_of(&Permutation::parse(3, "(1 2 3)").unwrap())
            .unwrap();
        let n = Subgroup::normal_closure(&g, g.gens(), &[c]);
        assert_eq!(n.order(), 3);
    }

    #[test]
    fn derived_series_of_sym4() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let orders: Vec<u64> = Subgroup::whole(&g)
            .derived_series(&g)
            .iter()
            .map(|h| h.order())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(Subgroup::whole(&g).is_solvable(&g));
    }

    #[test]
    fn sym4_mod_klein_four() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let v4: Vec<u32> = ["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
            .iter()
            .map(|s| g.index_of(&Permutation::parse(4, s).unwrap()).unwrap())
            .collect();
        let n = Subgroup::from_elements(&g, &v4).unwrap();
        let q = quotient_enumerated(&g, &n).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(q.order_statistics(), vec![(1, 1), (2, 3), (3, 2)]);

        let whole = quotient_enumerated(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(whole.order(), 1);
    }

    #[test]
    fn non_normal_rejected() {
        let g = group(3, &["(1 2)", "(1 2 3)"]);
        let t = g
            .index_of(&Permutation::parse(3, "(1 2)").unwrap())
            .unwrap();
        let h = Subgroup::generated(&g, &[t]);
        assert!(matches!(quotient_enumerated(&g, &h), Err(Error::NotNormal)));
        let c = g
            .index_of(&Permutation::parse(3, "(1 2 3)").unwrap())
            .unwrap();
        assert!(matches!(
            Subgroup::from_elements(&g, &[0, t, c]),
            Err(Error::NotSubgroup)
        ));
    }

    #[test]
    fn alt5_is_simple() {
        let g = group(5, &["(1 2 3)", "(1 2 4)", "(1 2 5)"]);
        assert_eq!(g.order(), 60);
        assert!(Subgroup::whole(&g).is_simple(&g));
        assert!(!Subgroup::whole(&g).is_solvable(&g));
    }
}
