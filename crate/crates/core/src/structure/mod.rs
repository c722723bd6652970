//! Solvable radical, socle, semisimple decomposition and permutation part,
//! plus the nonsolvable-length series and the identity-transfer checks built
//! on them.

mod series;
mod transfer;

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{is_prime, prime_power};
use crate::group::{
    class_representatives, generate_enumerated, psl2, EnumeratedGroup, OuterSpec, PermGroup,
    Permutation, SimpleGroup, SimpleSpec, Subgroup,
};

pub use series::{
    check_lambda_exponent_bound, nonsolvable_length, nu2, series_enumerated, series_perm_part,
    CharSeriesReport, Engine, LambdaBoundReport, LambdaBoundVerdict, LambdaOptions, LevelEngine,
    SeriesLevel, DEFAULT_LAMBDA_MAX_ORDER,
};
pub use transfer::{
    segment_transfer_check, transfer_check_power, CycleCheck, HypothesisVerdict,
    PowerTransferReport, SegmentTransferReport, SegmentVerdict,
};

pub(crate) fn ser_big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Isomorphism-class key for simple factors: order and element-order counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    /// `(element order, count)`, ascending.
    pub element_orders: Vec<(u32, u64)>,
}

impl Fingerprint {
    pub fn of(g: &EnumeratedGroup, h: &Subgroup) -> Self {
        Fingerprint {
            order: h.order(),
            element_orders: h.order_statistics(g),
        }
    }

    pub fn of_group(g: &EnumeratedGroup) -> Self {
        Fingerprint {
            order: g.order(),
            element_orders: g.order_statistics(),
        }
    }
}

fn catalog_fingerprint(spec: SimpleSpec) -> Result<Fingerprint> {
    let s = SimpleGroup::new(spec)?;
    let mut counts = std::collections::BTreeMap::new();
    for i in 0..s.order() {
        *counts.entry(s.element(i).order() as u32).or_insert(0u64) += 1;
    }
    Ok(Fingerprint {
        order: s.order() as u64,
        element_orders: counts.into_iter().collect(),
    })
}

/// The catalog group (`alt:5,7,8` first, then `psl2:q` by increasing `q`)
/// with this fingerprint.
pub fn identify_simple(fp: &Fingerprint) -> Option<SimpleSpec> {
    let mut candidates: Vec<SimpleSpec> = [5, 7, 8].into_iter().map(SimpleSpec::Alt).collect();
    let mut q = 4u64;
    while q * (q * q - 1) / 2 <= fp.order {
        if prime_power(q).is_some() {
            candidates.push(SimpleSpec::Psl2(q));
        }
        q += 1;
    }
    candidates
        .into_iter()
        .filter(|s| s.order() == fp.order && s.is_simple())
        .find(|&s| catalog_fingerprint(s).is_ok_and(|f| f == *fp))
}

/// Order of `x` modulo the normal subgroup `n`.
fn order_modulo(g: &EnumeratedGroup, x: u32, n: &Subgroup) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !n.contains(y) {
        y = g.mul_idx(y, x);
        k += 1;
    }
    k
}

/// The largest solvable normal subgroup. Grows a solvable normal subgroup
/// `R` by normal closures of elements of prime order modulo `R` until none
/// of them keeps it solvable.
pub fn solvable_radical(g: &EnumeratedGroup) -> Subgroup {
    let gens = g.gens().to_vec();
    let all: Vec<u32> = (0..g.len() as u32).collect();
    let classes = class_representatives(g, &all, &gens);
    let mut rad = Subgroup::trivial(g);
    let mut failed = vec![false; classes.len()];
    loop {
        let mut grew = false;
        for (ci, &(x, _)) in classes.iter().enumerate() {
            if failed[ci] || rad.contains(x) || !is_prime(order_modulo(g, x, &rad)) {
                continue;
            }
            let seeds: Vec<u32> = rad.gens().iter().copied().chain([x]).collect();
            let n = Subgroup::normal_closure(g, &gens, &seeds);
            if n.is_solvable(g) {
                rad = n;
                grew = true;
            } else {
                failed[ci] = true;
            }
        }
        if !grew {
            return rad;
        }
    }
}

fn is_contained(a: &Subgroup, b: &Subgroup) -> bool {
    a.order() <= b.order() && a.elements().iter().all(|&x| b.contains(x))
}

/// Minimal subgroups of `elems` normalized by `conjugators`: the minimal
/// members among normal closures of prime-order elements.
fn minimal_normal_within(g: &EnumeratedGroup, elems: &[u32], conjugators: &[u32]) -> Vec<Subgroup> {
    let mut closures: Vec<Subgroup> = class_representatives(g, elems, conjugators)
        .into_iter()
        .filter(|&(x, _)| is_prime(g.order_of(x) as u64))
        .map(|(x, _)| Subgroup::normal_closure(g, conjugators, &[x]))
        .collect();
    closures.sort_by_key(|n| n.order());
    let mut minimal: Vec<Subgroup> = Vec::new();
    for n in closures {
        if !minimal.iter().any(|m| is_contained(m, &n)) {
            minimal.push(n);
        }
    }
    minimal.sort_by_key(|n| (n.order(), smallest_nontrivial(n)));
    minimal
}

fn smallest_nontrivial(h: &Subgroup) -> u32 {
    h.elements()
        .iter()
        .copied()
        .filter(|&x| x != 0)
        .min()
        .unwrap_or(0)
}

pub fn minimal_normal_subgroups(g: &EnumeratedGroup) -> Vec<Subgroup> {
    let all: Vec<u32> = (0..g.len() as u32).collect();
    minimal_normal_within(g, &all, g.gens())
}

/// Join of all minimal normal subgroups.
pub fn socle(g: &EnumeratedGroup) -> Subgroup {
    minimal_normal_subgroups(g)
        .iter()
        .fold(Subgroup::trivial(g), |acc, m| acc.join(g, m))
}

#[derive(Clone, Debug, Serialize)]
pub struct Isotype {
    pub fingerprint: Fingerprint,
    /// Number of factors `n_i` of this type.
    pub count: usize,
    /// Matching catalog group, if any.
    pub simple: Option<SimpleSpec>,
}

#[derive(Clone, Debug)]
pub struct SimpleFactor {
    pub subgroup: Subgroup,
    pub isotype: usize,
}

/// `Soc(H) = S_1^{n_1} × … × S_r^{n_r}`, factors listed isotype by isotype.
#[derive(Clone, Debug)]
pub struct SemisimpleDecomposition {
    pub socle: Subgroup,
    pub isotypes: Vec<Isotype>,
    pub factors: Vec<SimpleFactor>,
}

impl SemisimpleDecomposition {
    /// Index range of the factors of isotype `i`.
    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.isotypes[..i].iter().map(|t| t.count).sum();
        start..start + self.isotypes[i].count
    }
}

/// Splits the socle of a group with trivial solvable radical into its simple
/// direct factors and groups them by fingerprint.
pub fn semisimple_decomposition(g: &EnumeratedGroup) -> Result<SemisimpleDecomposition> {
    let rad = solvable_radical(g);
    if !rad.is_trivial() {
        return Err(Error::NotSemisimple(rad.order()));
    }
    let soc = socle(g);
    let simple = minimal_normal_within(g, soc.elements(), soc.gens());
    let mut keyed: Vec<(Fingerprint, Subgroup)> = simple
        .into_iter()
        .map(|s| (Fingerprint::of(g, &s), s))
        .collect();
    keyed.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| smallest_nontrivial(&a.1).cmp(&smallest_nontrivial(&b.1)))
    });
    let product: BigUint = keyed
        .iter()
        .map(|(_, s)| BigUint::from(s.order()))
        .product();
    if product != BigUint::from(soc.order()) {
        return Err(Error::Invariant(format!(
            "socle of order {} is not the direct product of its {} simple factors",
            soc.order(),
            keyed.len()
        )));
    }
    let mut isotypes: Vec<Isotype> = Vec::new();
    let mut factors = Vec::new();
    for (fp, s) in keyed {
        if isotypes.last().map(|t| &t.fingerprint) != Some(&fp) {
            isotypes.push(Isotype {
                simple: identify_simple(&fp),
                fingerprint: fp,
                count: 0,
            });
        }
        let i = isotypes.len() - 1;
        isotypes[i].count += 1;
        factors.push(SimpleFactor {
            subgroup: s,
            isotype: i,
        });
    }
    Ok(SemisimpleDecomposition {
        socle: soc,
        isotypes,
        factors,
    })
}

/// `P(H) ≤ Sym(n_1) × … × Sym(n_r)` on `Σ n_i` points, the parts `P(H_i)`,
/// and `MPO(H) = max |P(H_i)|`.
#[derive(Clone, Debug)]
pub struct PermutationPart {
    pub group: PermGroup,
    pub parts: Vec<PermGroup>,
    pub counts: Vec<usize>,
}

impl PermutationPart {
    pub fn mpo(&self) -> BigUint {
        self.parts
            .iter()
            .map(|p| p.order())
            .max()
            .unwrap_or_else(|| BigUint::from(1u32))
    }

    fn from_group(group: PermGroup, counts: Vec<usize>) -> Result<Self> {
        let mut parts = Vec::with_capacity(counts.len());
        let mut start = 0u32;
        for &c in &counts {
            let points: Vec<u32> = (start..start + c as u32).collect();
            parts.push(group.restrict(&points)?);
            start += c as u32;
        }
        Ok(PermutationPart {
            group,
            parts,
            counts,
        })
    }
}

/// The conjugation action of `H` on its simple socle factors.
pub fn permutation_part(
    g: &EnumeratedGroup,
    dec: &SemisimpleDecomposition,
) -> Result<PermutationPart> {
    let n = dec.factors.len();
    if n == 0 {
        return PermutationPart::from_group(PermGroup::trivial(1), Vec::new());
    }
    let reps: Vec<u32> = dec
        .factors
        .iter()
        .map(|f| smallest_nontrivial(&f.subgroup))
        .collect();
    let gens = g
        .gens()
        .iter()
        .map(|&s| {
            let images = reps
                .iter()
                .map(|&x| {
                    let y = g.conj_idx(x, s);
                    dec.factors
                        .iter()
                        .position(|f| f.subgroup.contains(y))
                        .map(|i| i as u32)
                        .ok_or_else(|| {
                            Error::Invariant("conjugate of a factor is not a factor".into())
                        })
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    let counts = dec.isotypes.iter().map(|t| t.count).collect();
    PermutationPart::from_group(PermGroup::new(n, gens)?, counts)
}

/// A proof that a transitive permutation group `G` has trivial solvable
/// radical and socle `S^n`, the factors being the restrictions to `n`
/// blocks: the perfect core `N` of the block kernel has order `|N_0|^n`
/// where `N_0` (its action on the first block) is nonabelian simple,
/// transitive, with self-normalizing point stabilizers. Then `C_G(N) = 1`,
/// which forces `Rad(G) = 1` and `Soc(G) = N`.
#[derive(Clone, Debug, Serialize)]
pub struct SemisimpleCertificate {
    pub blocks: Vec<Vec<u32>>,
    pub factor: Fingerprint,
    pub simple: Option<SimpleSpec>,
    #[serde(serialize_with = "ser_big")]
    pub socle_order: BigUint,
}

fn candidate_block_systems(g: &PermGroup) -> Vec<Vec<Vec<u32>>> {
    let deg = g.degree() as u32;
    let mut systems: Vec<Vec<Vec<u32>>> = (1..deg)
        .map(|y| g.minimal_block_containing(0, y))
        .filter(|b| b.len() > 1)
        .collect();
    systems.push(vec![(0..deg).collect()]);
    systems.sort_by_key(|b| (b[0].len(), b.clone()));
    systems.dedup();
    systems
}

/// Looks for a [`SemisimpleCertificate`]; `None` when the group is
/// intransitive or no block system passes.
pub fn semisimple_certificate(
    g: &PermGroup,
    max_factor_order: u64,
) -> Result<Option<(SemisimpleCertificate, PermutationPart)>> {
    if g.is_trivial_group() || !g.is_transitive() {
        return Ok(None);
    }
    for blocks in candidate_block_systems(g) {
        let kernel = if blocks.len() == 1 {
            g.clone()
        } else {
            g.block_kernel(&blocks)?
        };
        let core = kernel.perfect_core();
        if core.is_trivial_group() {
            continue;
        }
        let n0 = core.restrict(&blocks[0])?;
        if core.order() != n0.order().pow(blocks.len() as u32)
            || !n0.is_transitive()
            || n0.stabilizer_fixed_points(0).len() != 1
        {
            continue;
        }
        let Some(order) = n0.order_u64().filter(|&o| o <= max_factor_order) else {
            continue;
        };
        let e = generate_enumerated(n0.degree(), n0.gens(), order)?;
        let whole = Subgroup::whole(&e);
        if e.is_abelian() || !whole.is_simple(&e) {
            continue;
        }
        let factor = Fingerprint::of_group(&e);
        let top = if blocks.len() == 1 {
            PermGroup::trivial(1)
        } else {
            g.action_on_blocks(&blocks)?
        };
        let part = PermutationPart::from_group(top, vec![blocks.len()])?;
        let cert = SemisimpleCertificate {
            simple: identify_simple(&factor),
            factor,
            socle_order: core.order(),
            blocks,
        };
        return Ok(Some((cert, part)));
    }
    Ok(None)
}

/// Outer class of an automorphism `beta` of a catalog group, given in the
/// catalog's natural action.
pub fn coset_class_of(spec: SimpleSpec, beta: &Permutation) -> Result<OuterSpec> {
    let simple = SimpleGroup::new(spec)?;
    let inner: PermGroup = match spec {
        SimpleSpec::Alt(n) => crate::group::alt(n)?,
        SimpleSpec::Psl2(q) => psl2(q)?,
    };
    for outer in spec.outer_classes() {
        let alpha = simple.outer_representative(outer)?;
        if inner.contains(&beta.compose(&alpha.inverse())) {
            return Ok(outer);
        }
    }
    Err(Error::InvalidArgument(format!(
        "{beta} is not an automorphism of {spec}"
    )))
}

/// `H` given as a permutation group, enumerated up to `cap` elements.
pub fn enumerate(g: &PermGroup, cap: u64) -> Result<Arc<EnumeratedGroup>> {
    Ok(Arc::new(g.enumerate(cap)?))
}
