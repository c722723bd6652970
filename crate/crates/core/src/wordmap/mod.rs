//! Word maps `w_G : G^d → G`: evaluation, exact fiber counts, identities and
//! seeded Monte Carlo estimates. Cosets of simple groups in their
//! automorphism groups live in [`coset`], the wreath-coordinate
//! decomposition in [`decompose`].

pub mod coset;
pub mod decompose;

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{EnumeratedGroup, GroupOps, PermGroup, Permutation};
use crate::word::{CompiledWord, Variable, Word};

pub use coset::{
    bad_exponent_scan, coset_exponent, coset_value_set, coset_value_set_full, is_coset_identity,
    wmb_refute, BadScanReport, BadWitness, CosetValues, WmbMethod, WmbReport,
};
pub use decompose::{
    c_rho_threshold, coordinate_decomposition, ppb_lambda_bound, CRho, CosetEquationSystem,
    CosetFactor,
};

/// Exhaustive fiber scans refuse to evaluate more tuples than this.
pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000_000;
/// Coset scans refuse to evaluate more tuples than this.
pub const DEFAULT_COSET_BUDGET: u64 = 1_000_000_000;
/// Two-sided 99% normal quantile.
pub const CONFIDENCE_Z: f64 = 2.576;
/// Samples per independently seeded stream in [`fiber_estimate_enumerated`]
/// and [`fiber_estimate_perm`].
pub const SAMPLE_CHUNK: u64 = 4096;

/// Left-to-right product of the assigned letters.
pub fn evaluate<G: GroupOps>(
    g: &G,
    w: &Word,
    assign: &BTreeMap<Variable, G::Elem>,
) -> Result<G::Elem> {
    let cw = w.compile();
    let vals = cw
        .slots
        .iter()
        .map(|v| {
            assign
                .get(v)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("variable {v} is not assigned")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(evaluate_compiled(g, &cw, &vals))
}

/// `vals[k]` is the value of slot `k`.
pub fn evaluate_compiled<G: GroupOps>(g: &G, cw: &CompiledWord, vals: &[G::Elem]) -> G::Elem {
    let invs: Vec<G::Elem> = vals.iter().map(|v| g.inv(v)).collect();
    cw.code.iter().fold(g.identity(), |acc, &(slot, inv)| {
        let x = if inv {
            &invs[slot as usize]
        } else {
            &vals[slot as usize]
        };
        g.mul(&acc, x)
    })
}

#[inline]
pub(crate) fn eval_idx(g: &EnumeratedGroup, code: &[(u32, bool)], vals: &[u32]) -> u32 {
    code.iter().fold(0, |acc, &(slot, inv)| {
        let x = vals[slot as usize];
        g.mul_idx(acc, if inv { g.inv_idx(x) } else { x })
    })
}

/// Writes `w(vals)` into `out`, reading images of slot `k` from `vals[k]` and
/// of its inverse from `invs[k]`.
#[inline]
pub(crate) fn eval_images(code: &[(u32, bool)], vals: &[&[u32]], invs: &[&[u32]], out: &mut [u32]) {
    for (p, o) in out.iter_mut().enumerate() {
        let mut x = p as u32;
        for &(slot, inv) in code.iter().rev() {
            let table = if inv {
                invs[slot as usize]
            } else {
                vals[slot as usize]
            };
            x = table[x as usize];
        }
        *o = x;
    }
}

pub(crate) fn eval_perm(cw: &CompiledWord, vals: &[Permutation]) -> Permutation {
    let degree = vals.first().map_or(0, |v| v.degree());
    let invs: Vec<Permutation> = vals.iter().map(|v| v.inverse()).collect();
    let vi: Vec<&[u32]> = vals.iter().map(|v| v.images()).collect();
    let ii: Vec<&[u32]> = invs.iter().map(|v| v.images()).collect();
    let mut out = vec![0; degree];
    eval_images(&cw.code, &vi, &ii, &mut out);
    Permutation::from_images_unchecked(out)
}

/// `n^d`, or `None` on overflow.
pub(crate) fn tuple_count(n: u64, d: usize) -> Option<u64> {
    n.checked_pow(d as u32)
}

pub(crate) fn check_budget(n: u64, d: usize, budget: u64, hint: &'static str) -> Result<u64> {
    match tuple_count(n, d) {
        Some(total) if total <= budget => Ok(total),
        _ => Err(Error::BudgetExceeded {
            needed: BigUint::from(n).pow(d as u32).to_string(),
            budget,
            hint,
        }),
    }
}

/// Decodes `rest` (mixed radix `n`, last slot fastest) into `vals[1..]`.
#[inline]
fn decode_tail(mut rest: u64, n: u64, vals: &mut [u32]) {
    for v in vals.iter_mut().skip(1).rev() {
        *v = (rest % n) as u32;
        rest /= n;
    }
}

/// Exact fiber sizes of `w_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDistribution {
    pub word: Word,
    pub order: u64,
    pub arity: usize,
    /// `counts[g]` tuples evaluate to element `g`.
    pub counts: Vec<u64>,
}

impl FiberDistribution {
    /// `|G|^d`.
    pub fn total(&self) -> BigUint {
        BigUint::from(self.order).pow(self.arity as u32)
    }

    /// `p_{w,G}(g)`.
    pub fn proportion(&self, g: u32) -> BigRational {
        BigRational::new(self.counts[g as usize].into(), self.total().into())
    }

    /// The largest fiber; ties go to the smallest element index.
    pub fn argmax(&self) -> (u32, u64) {
        let mut best = (0u32, self.counts[0]);
        for (i, &c) in self.counts.iter().enumerate() {
            if c > best.1 {
                best = (i as u32, c);
            }
        }
        best
    }

    /// Elements with a nonempty fiber.
    pub fn image_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Exhaustive count over `G^d`, split over the first variable.
pub fn fiber_distribution(
    w: &Word,
    g: &EnumeratedGroup,
    budget: u64,
    exec: &Exec,
) -> Result<FiberDistribution> {
    let cw = w.compile();
    let d = cw.arity();
    let n = g.order();
    check_budget(n, d, budget, "; use a sampled estimate instead")?;
    let code = &cw.code;
    let counts = if d == 0 {
        let mut c = vec![0u64; n as usize];
        c[0] = 1;
        c
    } else {
        let inner = n.pow(d as u32 - 1);
        exec.fold_reduce(
            n,
            || vec![0u64; n as usize],
            |mut acc, first| {
                let mut vals = vec![0u32; d];
                vals[0] = first as u32;
                for rest in 0..inner {
                    decode_tail(rest, n, &mut vals);
                    acc[eval_idx(g, code, &vals) as usize] += 1;
                }
                acc
            },
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
    };
    Ok(FiberDistribution {
        word: w.clone(),
        order: n,
        arity: d,
        counts,
    })
}

/// `None` when `G` satisfies `w ≡ 1`, otherwise the first tuple (in
/// lexicographic order) with a nontrivial value.
pub fn identity_witness(
    w: &Word,
    g: &EnumeratedGroup,
    budget: u64,
    exec: &Exec,
) -> Result<Option<Vec<u32>>> {
    let cw = w.compile();
    let d = cw.arity();
    if d == 0 {
        return Ok(None);
    }
    let n = g.order();
    check_budget(n, d, budget, "")?;
    let inner = n.pow(d as u32 - 1);
    Ok(exec.find_first(n, |first| {
        let mut vals = vec![0u32; d];
        vals[0] = first as u32;
        for rest in 0..inner {
            decode_tail(rest, n, &mut vals);
            if eval_idx(g, &cw.code, &vals) != 0 {
                return Some(vals);
            }
        }
        None
    }))
}

pub fn satisfies_identity(w: &Word, g: &EnumeratedGroup, budget: u64, exec: &Exec) -> Result<bool> {
    Ok(identity_witness(w, g, budget, exec)?.is_none())
}

/// Identity check over an explicit list of permutations forming a group.
pub fn perm_identity_witness(
    w: &Word,
    elems: &[Permutation],
    budget: u64,
    exec: &Exec,
) -> Result<Option<Vec<Permutation>>> {
    let cw = w.compile();
    let d = cw.arity();
    if d == 0 || elems.is_empty() {
        return Ok(None);
    }
    let n = elems.len() as u64;
    check_budget(n, d, budget, "")?;
    let inner = n.pow(d as u32 - 1);
    let invs: Vec<Permutation> = elems.iter().map(|e| e.inverse()).collect();
    let degree = elems[0].degree();
    let found = exec.find_first(n, |first| {
        let mut idx = vec![0u32; d];
        idx[0] = first as u32;
        let mut out = vec![0u32; degree];
        for rest in 0..inner {
            decode_tail(rest, n, &mut idx);
            let vi: Vec<&[u32]> = idx.iter().map(|&i| elems[i as usize].images()).collect();
            let ii: Vec<&[u32]> = idx.iter().map(|&i| invs[i as usize].images()).collect();
            eval_images(&cw.code, &vi, &ii, &mut out);
            if out.iter().enumerate().any(|(p, &x)| p as u32 != x) {
                return Some(idx);
            }
        }
        None
    });
    Ok(found.map(|idx| idx.iter().map(|&i| elems[i as usize].clone()).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbIdentityVerdict {
    pub holds: bool,
    /// Element with the largest fiber (smallest index on ties).
    pub element: u32,
    pub proportion: BigRational,
}

/// Does some fiber of `w_G` have proportion at least `rho`?
pub fn satisfies_prob_identity(
    w: &Word,
    g: &EnumeratedGroup,
    rho: &BigRational,
    budget: u64,
    exec: &Exec,
) -> Result<ProbIdentityVerdict> {
    let dist = fiber_distribution(w, g, budget, exec)?;
    let (element, _) = dist.argmax();
    let proportion = dist.proportion(element);
    Ok(ProbIdentityVerdict {
        holds: proportion >= *rho,
        element,
        proportion,
    })
}

/// Summary of a sampled fiber distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberEstimate<E> {
    pub samples: u64,
    pub seed: u64,
    pub distinct_values: usize,
    /// Most frequent value; ties go to the smallest value.
    pub argmax: E,
    pub max_count: u64,
    pub identity_count: u64,
}

impl<E> FiberEstimate<E> {
    pub fn max_proportion(&self) -> f64 {
        self.max_count as f64 / self.samples as f64
    }

    pub fn identity_proportion(&self) -> f64 {
        self.identity_count as f64 / self.samples as f64
    }

    /// `z·√(p(1−p)/n)` at the 99% level.
    pub fn radius(&self, p: f64) -> f64 {
        CONFIDENCE_Z * (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

fn estimate<E, S, V>(
    samples: u64,
    seed: u64,
    exec: &Exec,
    identity: &E,
    sample_value: S,
) -> Result<FiberEstimate<E>>
where
    E: Clone + Ord + Hash + Send + Sync,
    S: Fn(&mut ChaCha8Rng) -> V + Sync + Send,
    V: Into<E>,
{
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be positive".into(),
        ));
    }
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let counts = exec.fold_reduce(
        chunks,
        HashMap::<E, u64>::new,
        |mut acc, chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let len = SAMPLE_CHUNK.min(samples - chunk * SAMPLE_CHUNK);
            for _ in 0..len {
                *acc.entry(sample_value(&mut rng).into()).or_insert(0) += 1;
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let (argmax, max_count) = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
        .map(|(k, &v)| (k.clone(), v))
        .expect("at least one sample");
    Ok(FiberEstimate {
        samples,
        seed,
        distinct_values: counts.len(),
        identity_count: counts.get(identity).copied().unwrap_or(0),
        argmax,
        max_count,
    })
}

/// Samples uniform tuples of element indices. Reproducible for a fixed seed
/// and independent of the worker count.
pub fn fiber_estimate_enumerated(
    w: &Word,
    g: &EnumeratedGroup,
    samples: u64,
    seed: u64,
    exec: &Exec,
) -> Result<FiberEstimate<u32>> {
    let cw = w.compile();
    let n = g.order() as u32;
    estimate(samples, seed, exec, &0u32, |rng| {
        let vals: Vec<u32> = (0..cw.arity()).map(|_| rng.gen_range(0..n)).collect();
        eval_idx(g, &cw.code, &vals)
    })
}

/// Samples tuples through the stabilizer chain (uniform per element).
pub fn fiber_estimate_perm(
    w: &Word,
    g: &PermGroup,
    samples: u64,
    seed: u64,
    exec: &Exec,
) -> Result<FiberEstimate<Permutation>> {
    let cw = w.compile();
    let chain = g.bsgs();
    let id = Permutation::identity(g.degree());
    estimate(samples, seed, exec, &id, |rng| {
        let vals: Vec<Permutation> = (0..cw.arity()).map(|_| chain.random_element(rng)).collect();
        if vals.is_empty() {
            Permutation::identity(g.degree())
        } else {
            eval_perm(&cw, &vals)
        }
    })
}
