//! Permutation groups given by generators, with a deterministic
//! Schreier–Sims stabilizer chain.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};

use super::{generate_enumerated, EnumeratedGroup, Permutation};

pub const DEFAULT_MAX_DEGREE: usize = 10_000;

const NONE: u32 = u32::MAX;

struct Level {
    point: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `slot[x]` indexes `reps` for orbit points, `NONE` elsewhere.
    slot: Vec<u32>,
    /// `reps[k]` maps `point` to `orbit[k]`.
    reps: Vec<Permutation>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NONE; degree],
            reps: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.slot.iter_mut().for_each(|s| *s = NONE);
        self.orbit.clear();
        self.reps.clear();
        self.slot[self.point as usize] = 0;
        self.orbit.push(self.point);
        self.reps.push(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            for s in &self.gens {
                let y = s.image(x);
                if self.slot[y as usize] == NONE {
                    self.slot[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    let u = s.compose(&self.reps[head]);
                    self.reps.push(u);
                }
            }
            head += 1;
        }
    }

    fn rep_for(&self, x: u32) -> Option<&Permutation> {
        match self.slot[x as usize] {
            NONE => None,
            k => Some(&self.reps[k as usize]),
        }
    }
}

/// A base and strong generating set with explicit transversals.
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl fmt::Debug for Bsgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bsgs")
            .field("base", &self.base())
            .field("orbit_lengths", &self.orbit_lengths())
            .finish()
    }
}

impl Bsgs {
    /// Schreier–Sims over `gens`, with `prefix` as the first base points.
    /// Further base points are the smallest points moved by new generators.
    pub fn build(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Bsgs {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<u32> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().expect("nonidentity"));
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for g in &gens {
            for (i, level) in levels.iter_mut().enumerate() {
                if base[..i].iter().all(|&b| g.image(b) == b) {
                    level.gens.push(g.clone());
                }
            }
        }
        for level in &mut levels {
            level.rebuild_orbit(degree);
        }
        let mut chain = Bsgs { degree, levels };
        chain.complete();
        chain
    }

    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.image(level.point);
            match level.rep_for(x) {
                None => return (h, i),
                Some(u) => h = u.inverse().compose(&h),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let degree = self.degree;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart = None;
            'scan: for k in 0..self.levels[lvl].orbit.len() {
                let x = self.levels[lvl].orbit[k];
                for s_idx in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let s = &level.gens[s_idx];
                    let y = s.image(x);
                    let ux = &level.reps[k];
                    let uy = level.rep_for(y).expect("orbit is closed");
                    let schreier = uy.inverse().compose(&s.compose(ux));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&schreier, lvl + 1);
                    if h.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        let p = h.first_moved_point().expect("nonidentity");
                        self.levels.push(Level::new(p, degree));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild_orbit(degree);
                    }
                    restart = Some(j);
                    break 'scan;
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g, 0).0.is_identity()
    }

    /// Strong generators fixing the first `k` base points; they generate
    /// the pointwise stabilizer of those points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Permutation> {
        self.levels
            .get(k)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut all: Vec<Permutation> = self
            .levels
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect();
        all.sort();
        all.dedup();
        all
    }

    /// Uniform random element: one uniformly chosen coset representative
    /// per level, multiplied top-down.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let k = rng.gen_range(0..level.reps.len());
            g = g.compose(&level.reps[k]);
        }
        g
    }

    /// Every element, in mixed-radix order over the transversals.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "enumeration",
                limit: cap,
                reached: order.to_u64().unwrap_or(u64::MAX),
            });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.reps.len());
            for u in &level.reps {
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// A permutation group of fixed degree given by generators. The
/// stabilizer chain is built on first use.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<Bsgs>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("gens", &self.gens)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree > DEFAULT_MAX_DEGREE {
            return Err(Error::CapExceeded {
                what: "permutation degree",
                limit: DEFAULT_MAX_DEGREE as u64,
                reached: degree as u64,
            });
        }
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::MixedParents);
        }
        let mut kept: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(PermGroup {
            degree,
            gens: kept,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.chain
            .get_or_init(|| Bsgs::build(self.degree, &self.gens, &[]))
    }

    pub fn bsgs_with_prefix(&self, prefix: &[u32]) -> Bsgs {
        Bsgs::build(self.degree, &self.gens, prefix)
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.bsgs().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.bsgs().random_element(rng)
    }

    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        self.bsgs().elements(cap)
    }

    pub fn enumerate(&self, cap: u64) -> Result<EnumeratedGroup> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "enumeration",
                limit: cap,
                reached: order.to_u64().unwrap_or(u64::MAX),
            });
        }
        generate_enumerated(self.degree, &self.gens, cap)
    }

    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            for g in &self.gens {
                let z = g.image(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orbit.push(z);
                }
            }
            head += 1;
        }
        orbit
    }

    /// Orbits on points, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut o = self.orbit(x);
            for &y in &o {
                seen[y as usize] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    fn with_extra_gen(&self, g: Permutation) -> PermGroup {
        let mut gens = self.gens.clone();
        gens.push(g);
        PermGroup {
            degree: self.degree,
            gens,
            chain: OnceLock::new(),
        }
    }

    /// Closure of `seeds` under conjugation by this group's generators.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> PermGroup {
        let mut n = PermGroup::new(self.degree, seeds.to_vec()).expect("same degree");
        loop {
            let mut grew = false;
            let mut i = 0;
            while i < n.gens.len() {
                let x = n.gens[i].clone();
                for c in &self.gens {
                    let y = x.conjugate_by(c);
                    if !n.contains(&y) {
                        n = n.with_extra_gen(y);
                        grew = true;
                    }
                }
                i += 1;
            }
            if !grew {
                return n;
            }
        }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut seeds = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.compose(b).compose(&b.compose(a).inverse());
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial_group()
    }

    /// Trivial as a group (the generator list may still be nonempty only if
    /// it was built unchecked; generators are never the identity).
    pub fn is_trivial_group(&self) -> bool {
        self.gens.is_empty() || self.order().is_one()
    }

    /// Last term of the derived series.
    pub fn perfect_core(&self) -> PermGroup {
        self.derived_series().pop().unwrap()
    }

    /// The action on an invariant point set, renumbered `0..points.len()` in
    /// the given order.
    pub fn restrict(&self, points: &[u32]) -> Result<PermGroup> {
        let mut pos = vec![NONE; self.degree];
        for (i, &p) in points.iter().enumerate() {
            pos[p as usize] = i as u32;
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                points
                    .iter()
                    .map(|&p| match pos[g.image(p) as usize] {
                        NONE => Err(Error::Precondition("point set is not invariant".into())),
                        k => Ok(k),
                    })
                    .collect::<Result<Vec<u32>>>()
                    .map(Permutation::from_images_unchecked)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(points.len(), gens)
    }

    fn block_index(&self, blocks: &[Vec<u32>]) -> Result<Vec<u32>> {
        let mut block_of = vec![NONE; self.degree];
        for (i, b) in blocks.iter().enumerate() {
            for &p in b {
                block_of[p as usize] = i as u32;
            }
        }
        if block_of.contains(&NONE) {
            return Err(Error::InvalidArgument(
                "blocks do not cover every point".into(),
            ));
        }
        Ok(block_of)
    }

    fn block_image(
        &self,
        g: &Permutation,
        blocks: &[Vec<u32>],
        block_of: &[u32],
    ) -> Result<Vec<u32>> {
        blocks
            .iter()
            .map(|b| {
                let target = block_of[g.image(b[0]) as usize];
                if b.iter().all(|&p| block_of[g.image(p) as usize] == target) {
                    Ok(target)
                } else {
                    Err(Error::Precondition(
                        "partition is not a block system".into(),
                    ))
                }
            })
            .collect()
    }

    /// The induced action on a block system (blocks numbered as given).
    pub fn action_on_blocks(&self, blocks: &[Vec<u32>]) -> Result<PermGroup> {
        let block_of = self.block_index(blocks)?;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                self.block_image(g, blocks, &block_of)
                    .map(Permutation::from_images_unchecked)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(blocks.len(), gens)
    }

    /// Elements fixing every block setwise. Computed as a pointwise
    /// stabilizer in the action on points plus blocks.
    pub fn block_kernel(&self, blocks: &[Vec<u32>]) -> Result<PermGroup> {
        let block_of = self.block_index(blocks)?;
        let n = self.degree as u32;
        let ext_degree = self.degree + blocks.len();
        let ext_gens = self
            .gens
            .iter()
            .map(|g| {
                let on_blocks = self.block_image(g, blocks, &block_of)?;
                let mut images = g.images().to_vec();
                images.extend(on_blocks.iter().map(|&b| b + n));
                Ok(Permutation::from_images_unchecked(images))
            })
            .collect::<Result<Vec<_>>>()?;
        let prefix: Vec<u32> = (n..ext_degree as u32).collect();
        let chain = Bsgs::build(ext_degree, &ext_gens, &prefix);
        let kernel_gens = chain
            .stabilizer_gens(prefix.len())
            .into_iter()
            .map(|g| Permutation::from_images_unchecked(g.images()[..self.degree].to_vec()))
            .collect();
        PermGroup::new(self.degree, kernel_gens)
    }

    /// The finest invariant partition in which `x` and `y` share a part.
    pub fn minimal_block_containing(&self, x: u32, y: u32) -> Vec<Vec<u32>> {
        let mut parent: Vec<u32> = (0..self.degree as u32).collect();
        fn find(parent: &mut [u32], mut a: u32) -> u32 {
            while parent[a as usize] != a {
                parent[a as usize] = parent[parent[a as usize] as usize];
                a = parent[a as usize];
            }
            a
        }
        let mut queue = vec![(x, y)];
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx != ry {
            parent[rx.max(ry) as usize] = rx.min(ry);
        }
        while let Some((a, b)) = queue.pop() {
            for g in &self.gens {
                let (ga, gb) = (g.image(a), g.image(b));
                let (ra, rb) = (find(&mut parent, ga), find(&mut parent, gb));
                if ra != rb {
                    parent[ra.max(rb) as usize] = ra.min(rb);
                    queue.push((ga, gb));
                }
            }
        }
        let mut blocks: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for p in 0..self.degree as u32 {
            let r = find(&mut parent, p);
            blocks.entry(r).or_default().push(p);
        }
        blocks.into_values().collect()
    }

    /// Points fixed by the stabilizer of `x`.
    pub fn stabilizer_fixed_points(&self, x: u32) -> Vec<u32> {
        let chain = self.bsgs_with_prefix(&[x]);
        let stab = chain.stabilizer_gens(1);
        (0..self.degree as u32)
            .filter(|&p| stab.iter().all(|g| g.image(p) == p))
            .collect()
    }
}
