//! Word values on products of cosets `Sα₁ × … × Sα_d` inside `Aut(S)`.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{AutCoset, OuterSpec, Permutation, SimpleGroup, SimpleSpec};
use crate::word::Word;

use super::{check_budget, eval_images};

/// Member images are tabulated up to this many entries per coset.
const TABLE_LIMIT: usize = 1 << 26;

/// Member images of a coset, tabulated or computed on demand.
struct Members<'a> {
    coset: &'a AutCoset,
    degree: usize,
    table: Option<(Vec<u32>, Vec<u32>)>,
}

impl<'a> Members<'a> {
    fn new(coset: &'a AutCoset, tabulate: bool) -> Self {
        let degree = coset.degree();
        let table = (tabulate && coset.len() * degree <= TABLE_LIMIT).then(|| {
            let mut fwd = Vec::with_capacity(coset.len() * degree);
            let mut inv = vec![0u32; coset.len() * degree];
            let mut buf = Vec::with_capacity(degree);
            for i in 0..coset.len() {
                coset.member_into(i, &mut buf);
                let base = i * degree;
                for (p, &x) in buf.iter().enumerate() {
                    inv[base + x as usize] = p as u32;
                }
                fwd.extend_from_slice(&buf);
            }
            (fwd, inv)
        });
        Members {
            coset,
            degree,
            table,
        }
    }

    fn fill(&self, i: usize, fwd: &mut Vec<u32>, inv: &mut Vec<u32>) {
        match &self.table {
            Some((f, v)) => {
                let r = i * self.degree..(i + 1) * self.degree;
                fwd.clear();
                fwd.extend_from_slice(&f[r.clone()]);
                inv.clear();
                inv.extend_from_slice(&v[r]);
            }
            None => {
                self.coset.member_into(i, fwd);
                inv.resize(self.degree, 0);
                for (p, &x) in fwd.iter().enumerate() {
                    inv[x as usize] = p as u32;
                }
            }
        }
    }
}

/// Evaluates `w` at every tuple of members, calling `visit` with the tuple
/// and the value. Scans are split over the first coset; `visit` returning
/// `Some` stops the scan, and the hit with the smallest first index wins.
fn scan<T, V>(
    w: &Word,
    cosets: &[AutCoset],
    budget: u64,
    exec: &Exec,
    visit: V,
) -> Result<Option<T>>
where
    T: Send,
    V: Fn(&[usize], &[u32]) -> Option<T> + Sync + Send,
{
    let cw = w.compile();
    let d = cw.arity();
    if cosets.len() != d {
        return Err(Error::InvalidArgument(format!(
            "word has {d} variables but {} cosets were given",
            cosets.len()
        )));
    }
    if d == 0 {
        return Ok(visit(&[], &[]));
    }
    let group = cosets[0].group();
    if cosets.iter().any(|c| c.group().spec() != group.spec()) {
        return Err(Error::MixedParents);
    }
    let n = group.order() as u64;
    check_budget(n, d, budget, "; coset scans enumerate |S|^d tuples")?;
    let degree = cosets[0].degree();
    let members: Vec<Members> = cosets
        .iter()
        .enumerate()
        .map(|(k, c)| Members::new(c, k > 0))
        .collect();
    let inner = n.pow(d as u32 - 1);
    let code = &cw.code;
    Ok(exec.find_first(n, |first| {
        let mut idx = vec![0usize; d];
        idx[0] = first as usize;
        let mut fwd = vec![Vec::with_capacity(degree); d];
        let mut inv = vec![Vec::with_capacity(degree); d];
        let mut out = vec![0u32; degree];
        members[0].fill(idx[0], &mut fwd[0], &mut inv[0]);
        let mut loaded = vec![usize::MAX; d];
        for rest in 0..inner {
            let mut r = rest;
            for k in (1..d).rev() {
                idx[k] = (r % n) as usize;
                r /= n;
                if loaded[k] != idx[k] {
                    members[k].fill(idx[k], &mut fwd[k], &mut inv[k]);
                    loaded[k] = idx[k];
                }
            }
            let vi: Vec<&[u32]> = fwd.iter().map(|v| v.as_slice()).collect();
            let ii: Vec<&[u32]> = inv.iter().map(|v| v.as_slice()).collect();
            eval_images(code, &vi, &ii, &mut out);
            if let Some(hit) = visit(&idx, &out) {
                return Some(hit);
            }
        }
        None
    }))
}

fn value_at(w: &Word, cosets: &[AutCoset], idx: &[usize]) -> Permutation {
    let vals: Vec<Permutation> = cosets.iter().zip(idx).map(|(c, &i)| c.member(i)).collect();
    if vals.is_empty() {
        return Permutation::identity(cosets.first().map_or(0, |c| c.degree()));
    }
    super::eval_perm(&w.compile(), &vals)
}

/// Outcome of a value-set scan that stops at two distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetValues {
    /// Value at the all-zero tuple.
    pub first: Permutation,
    /// A second, different value and the member indices producing it.
    pub second: Option<(Permutation, Vec<usize>)>,
}

impl CosetValues {
    pub fn is_constant(&self) -> bool {
        self.second.is_none()
    }
}

/// `w(Sα₁, …, Sα_d)`, stopping once two values are seen.
pub fn coset_value_set(
    w: &Word,
    cosets: &[AutCoset],
    budget: u64,
    exec: &Exec,
) -> Result<CosetValues> {
    let d = w.num_variables();
    let zero = vec![0usize; d];
    if cosets.len() != d {
        return Err(Error::InvalidArgument(format!(
            "word has {d} variables but {} cosets were given",
            cosets.len()
        )));
    }
    if cosets
        .iter()
        .any(|c| c.group().spec() != cosets[0].group().spec())
    {
        return Err(Error::MixedParents);
    }
    let first = value_at(w, cosets, &zero);
    let target = first.images().to_vec();
    let second = scan(w, cosets, budget, exec, |idx, out| {
        (out != target.as_slice()).then(|| idx.to_vec())
    })?
    .map(|idx| (value_at(w, cosets, &idx), idx));
    Ok(CosetValues { first, second })
}

/// The full value set, sorted. Fails once more than `max_values` values appear.
pub fn coset_value_set_full(
    w: &Word,
    cosets: &[AutCoset],
    budget: u64,
    max_values: usize,
    exec: &Exec,
) -> Result<Vec<Permutation>> {
    let d = w.num_variables();
    if d == 0 {
        return Ok(vec![value_at(w, cosets, &[])]);
    }
    let seen = std::sync::Mutex::new(HashSet::<Vec<u32>>::new());
    let overflow = scan(w, cosets, budget, exec, |_, out| {
        let mut s = seen.lock().expect("poisoned");
        if !s.contains(out) {
            s.insert(out.to_vec());
            if s.len() > max_values {
                return Some(());
            }
        }
        None
    })?;
    if overflow.is_some() {
        return Err(Error::CapExceeded {
            what: "coset value set",
            limit: max_values as u64,
            reached: max_values as u64 + 1,
        });
    }
    let mut out: Vec<Permutation> = seen
        .into_inner()
        .expect("poisoned")
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    out.sort();
    Ok(out)
}

/// Is `w` constant on `Sα₁ × … × Sα_d`? A constant value other than the
/// identity would contradict the non-constancy lemma and is reported as an
/// invariant violation.
pub fn is_coset_identity(w: &Word, cosets: &[AutCoset], budget: u64, exec: &Exec) -> Result<bool> {
    let values = coset_value_set(w, cosets, budget, exec)?;
    if values.is_constant() && !values.first.is_identity() {
        return Err(Error::Invariant(format!(
            "{w} is constant but not trivial on the cosets: value {}",
            values.first
        )));
    }
    Ok(values.is_constant())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WmbMethod {
    /// A variable occurring once makes every coset value set as large as `S`.
    MultiplicityOne,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WmbReport {
    pub simple: SimpleSpec,
    pub method: WmbMethod,
    /// First outer tuple on which `w` is a coset identity.
    pub witness: Option<Vec<OuterSpec>>,
    pub tuples_checked: usize,
    pub tuples_total: usize,
}

/// Searches all `d`-tuples of outer classes (first variable slowest) for a
/// coset identity over `S`.
pub fn wmb_refute(w: &Word, spec: SimpleSpec, budget: u64, exec: &Exec) -> Result<WmbReport> {
    let outers = spec.outer_classes();
    let d = w.num_variables();
    let tuples_total = outers.len().pow(d as u32);
    let singly = w.variables().iter().any(|v| w.multiplicity(*v) == 1);
    if singly && spec.order() > 1 {
        return Ok(WmbReport {
            simple: spec,
            method: WmbMethod::MultiplicityOne,
            witness: None,
            tuples_checked: 0,
            tuples_total,
        });
    }
    let per_tuple = check_budget(spec.order(), d, budget, "; |Out(S)|^d·|S|^d tuples needed")?;
    if per_tuple.saturating_mul(tuples_total as u64) > budget {
        return Err(Error::BudgetExceeded {
            needed: (num_bigint::BigUint::from(per_tuple) * tuples_total).to_string(),
            budget,
            hint: "; |Out(S)|^d·|S|^d tuples needed",
        });
    }
    let group = SimpleGroup::new(spec)?;
    let cosets: Vec<AutCoset> = outers
        .iter()
        .map(|&o| group.coset(o))
        .collect::<Result<_>>()?;
    for k in 0..tuples_total {
        let mut r = k;
        let mut tuple = vec![0usize; d];
        for slot in (0..d).rev() {
            tuple[slot] = r % outers.len();
            r /= outers.len();
        }
        let chosen: Vec<AutCoset> = tuple.iter().map(|&i| cosets[i].clone()).collect();
        if is_coset_identity(w, &chosen, budget, exec)? {
            return Ok(WmbReport {
                simple: spec,
                method: WmbMethod::Exhaustive,
                witness: Some(tuple.iter().map(|&i| outers[i]).collect()),
                tuples_checked: k + 1,
                tuples_total,
            });
        }
    }
    Ok(WmbReport {
        simple: spec,
        method: WmbMethod::Exhaustive,
        witness: None,
        tuples_checked: tuples_total,
        tuples_total,
    })
}

/// Order of the permutation with the given images.
fn images_order(images: &[u32], seen: &mut [bool]) -> u64 {
    seen.iter_mut().for_each(|s| *s = false);
    let mut order = 1u64;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

/// `exp(Sα)`: the lcm of the orders of all members.
pub fn coset_exponent(coset: &AutCoset, exec: &Exec) -> u64 {
    let degree = coset.degree();
    exec.fold_reduce(
        coset.len() as u64,
        || (1u64, Vec::with_capacity(degree), vec![false; degree]),
        |(acc, mut buf, mut seen), i| {
            coset.member_into(i as usize, &mut buf);
            let o = images_order(&buf, &mut seen);
            (acc.lcm(&o), buf, seen)
        },
        |a, b| (a.0.lcm(&b.0), a.1, a.2),
    )
    .0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadWitness {
    pub divisor: u64,
    pub simple: SimpleSpec,
    pub outer: OuterSpec,
    pub coset_exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadScanReport {
    pub exponent: u64,
    pub divisors: Vec<u64>,
    /// `exp(Sα)` for every catalog coset, the inner one included.
    pub coset_exponents: Vec<(SimpleSpec, OuterSpec, u64)>,
    /// First witnessing coset for each witnessed-bad divisor.
    pub witnesses: Vec<BadWitness>,
    /// Divisors of `e` shown bad by some catalog coset.
    pub bad: Vec<u64>,
    pub gcd: Option<u64>,
}

impl BadScanReport {
    pub fn witnessed_bad(&self) -> bool {
        self.bad.contains(&self.exponent)
    }
}

pub fn divisors(e: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= e {
        if e.is_multiple_of(i) {
            small.push(i);
            if i * i != e {
                large.push(e / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// A divisor `n | e` is witnessed bad when `x^n` is a coset identity over
/// some catalog coset, i.e. when `exp(Sα) | n`.
pub fn bad_exponent_scan(e: u64, catalog: &[SimpleSpec], exec: &Exec) -> Result<BadScanReport> {
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let mut coset_exponents = Vec::new();
    for &spec in catalog {
        let group = SimpleGroup::new(spec)?;
        for outer in spec.outer_classes() {
            coset_exponents.push((spec, outer, coset_exponent(&group.coset(outer)?, exec)));
        }
    }
    let divisors = divisors(e);
    let mut witnesses = Vec::new();
    for &n in &divisors {
        if let Some(&(simple, outer, ce)) = coset_exponents.iter().find(|(_, _, ce)| n % ce == 0) {
            witnesses.push(BadWitness {
                divisor: n,
                simple,
                outer,
                coset_exponent: ce,
            });
        }
    }
    let bad: Vec<u64> = witnesses.iter().map(|w| w.divisor).collect();
    let gcd = bad.iter().copied().reduce(|a, b| a.gcd(&b));
    Ok(BadScanReport {
        exponent: e,
        divisors,
        coset_exponents,
        witnesses,
        bad,
        gcd,
    })
}
