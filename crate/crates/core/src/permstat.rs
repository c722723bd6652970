//! Support and fixed-point statistics of permutation groups, and the order
//! bounds they imply.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn support(p: &Permutation) -> usize {
    p.support()
}

pub fn fix(p: &Permutation) -> usize {
    p.fixed_points()
}

pub fn support_set(p: &Permutation) -> Vec<u32> {
    p.support_set()
}

/// Number of orbits on points.
pub fn orbit_count(p: &PermGroup) -> usize {
    p.orbits().len()
}

/// Number of orbits on ordered pairs of points, diagonal included.
pub fn rank(p: &PermGroup) -> usize {
    let n = p.degree();
    let mut parent: Vec<u32> = (0..(n * n) as u32).collect();
    fn find(parent: &mut [u32], mut a: u32) -> u32 {
        while parent[a as usize] != a {
            parent[a as usize] = parent[parent[a as usize] as usize];
            a = parent[a as usize];
        }
        a
    }
    let mut classes = n * n;
    for g in p.gens() {
        for x in 0..n {
            let gx = g.image(x as u32) as usize;
            for y in 0..n {
                let a = (x * n + y) as u32;
                let b = (gx * n + g.image(y as u32) as usize) as u32;
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb) as usize] = ra.min(rb);
                    classes -= 1;
                }
            }
        }
    }
    classes
}

/// `SB_C(P)`: elements moving at most `c` points.
pub fn small_support_set(p: &PermGroup, c: usize, budget: u64) -> Result<Vec<Permutation>> {
    Ok(p.elements(budget)?
        .into_iter()
        .filter(|s| s.support() <= c)
        .collect())
}

/// Exact statistics from a full enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportStats {
    pub degree: usize,
    pub order: u64,
    pub t: usize,
    pub orbit_sizes: Vec<usize>,
    pub r: usize,
    /// Largest support of an element.
    pub c: usize,
    /// Number of points moved by some element.
    pub supp_p: usize,
    pub mean_fix: BigRational,
    pub mean_fix_sq: BigRational,
    /// `support_counts[k]` elements have support exactly `k`.
    pub support_counts: Vec<u64>,
}

impl SupportStats {
    /// `|SB_C(P)|`.
    pub fn sb_count(&self, c: usize) -> u64 {
        self.support_counts.iter().take(c + 1).sum()
    }

    /// `ρ = |SB_C(P)| / |P|`.
    pub fn rho(&self, c: usize) -> BigRational {
        ratio(self.sb_count(c), self.order)
    }

    /// Elements with support strictly above `bound`.
    fn count_support_above(&self, bound: &BigRational) -> u64 {
        self.support_counts
            .iter()
            .enumerate()
            .filter(|&(k, _)| BigRational::from_integer(k.into()) > *bound)
            .map(|(_, &n)| n)
            .sum()
    }
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone)]
struct Acc {
    sum_fix: u64,
    sum_fix_sq: u64,
    counts: Vec<u64>,
}

/// Enumerates `P` (at most `budget` elements) and computes the moments of
/// `fix`. Fails with [`Error::Invariant`] if the moments disagree with the
/// orbit counts.
pub fn moments(p: &PermGroup, budget: u64, exec: &Exec) -> Result<SupportStats> {
    let elems = p.elements(budget)?;
    let n = p.degree();
    let acc = exec.fold_reduce(
        elems.len() as u64,
        || Acc {
            sum_fix: 0,
            sum_fix_sq: 0,
            counts: vec![0; n + 1],
        },
        |mut acc, i| {
            let f = elems[i as usize].fixed_points() as u64;
            acc.sum_fix += f;
            acc.sum_fix_sq += f * f;
            acc.counts[n - f as usize] += 1;
            acc
        },
        |mut a, b| {
            a.sum_fix += b.sum_fix;
            a.sum_fix_sq += b.sum_fix_sq;
            for (x, y) in a.counts.iter_mut().zip(b.counts) {
                *x += y;
            }
            a
        },
    );
    let order = elems.len() as u64;
    let orbits = p.orbits();
    let stats = SupportStats {
        degree: n,
        order,
        t: orbits.len(),
        orbit_sizes: orbits.iter().map(|o| o.len()).collect(),
        r: rank(p),
        c: acc.counts.iter().rposition(|&k| k > 0).unwrap_or(0),
        supp_p: (0..n as u32)
            .filter(|&x| p.gens().iter().any(|g| g.image(x) != x))
            .count(),
        mean_fix: ratio(acc.sum_fix, order),
        mean_fix_sq: ratio(acc.sum_fix_sq, order),
        support_counts: acc.counts,
    };
    if stats.mean_fix != int(stats.t) || stats.mean_fix_sq != int(stats.r) {
        return Err(Error::Invariant(format!(
            "fixed-point moments {} and {} disagree with t = {} and r = {}",
            stats.mean_fix, stats.mean_fix_sq, stats.t, stats.r
        )));
    }
    Ok(stats)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `m! >= n`, computed without forming large factorials.
pub fn factorial_at_least(m: u64, n: &BigUint) -> bool {
    let mut acc = BigUint::one();
    for k in 1..=m {
        if acc >= *n {
            return true;
        }
        acc *= k;
    }
    acc >= *n
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportTheoremReport {
    pub c: usize,
    pub order: u64,
    pub supp_p: usize,
    /// `|P| <= c!`.
    pub order_holds: bool,
    /// `2(c − 1)`, present when `c > 1`.
    pub supp_bound: Option<usize>,
    /// `supp(P) <= 2(c − 1)`, vacuously true when `c <= 1`.
    pub supp_holds: bool,
}

pub fn check_support_theorem(stats: &SupportStats) -> SupportTheoremReport {
    let supp_bound = (stats.c > 1).then(|| 2 * (stats.c - 1));
    SupportTheoremReport {
        c: stats.c,
        order: stats.order,
        supp_p: stats.supp_p,
        order_holds: factorial_at_least(stats.c as u64, &BigUint::from(stats.order)),
        supp_bound,
        supp_holds: supp_bound.is_none_or(|b| stats.supp_p <= b),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialComparison {
    /// `∏ n_i!`.
    pub lhs: BigUint,
    /// `(1 + Σ (n_i − 1))!`.
    pub rhs: BigUint,
    pub holds: bool,
}

pub fn factorial_product_bound(sizes: &[u64]) -> Result<FactorialComparison> {
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument(
            "orbit sizes must be positive".into(),
        ));
    }
    let lhs = sizes
        .iter()
        .fold(BigUint::one(), |acc, &n| acc * factorial(n));
    let rhs = factorial(1 + sizes.iter().map(|n| n - 1).sum::<u64>());
    Ok(FactorialComparison {
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

/// `f(ρ, C) = (⌊ρ⁻¹ + C + 1⌋!)^⌈8(C − log ρ)⌉`, kept as its two integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBound {
    pub factorial_of: u64,
    pub exponent: u64,
}

/// Values of `8(C − log ρ)` this close to an integer are rounded up past it.
pub const F_BOUND_TIE_TOLERANCE: f64 = 1e-12;

pub(crate) fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    let num = x.numer().to_biguint().expect("positive");
    let den = x.denom().to_biguint().expect("positive");
    ln_biguint(&num) - ln_biguint(&den)
}

pub fn f_bound_parts(rho: &BigRational, c: u64) -> Result<FBound> {
    if *rho <= BigRational::zero() || *rho > BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "rho = {rho} is outside (0, 1]"
        )));
    }
    let base = (rho.recip() + BigRational::from_integer((c + 1).into())).floor();
    let factorial_of = base
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("rho is too small".into()))?;
    let exponent = if rho.is_one() {
        8 * c
    } else {
        let x = 8.0 * (c as f64 - ln_rational(rho));
        let nearest = x.round();
        if (x - nearest).abs() < F_BOUND_TIE_TOLERANCE {
            nearest as u64 + 1
        } else {
            x.ceil() as u64
        }
    };
    Ok(FBound {
        factorial_of,
        exponent,
    })
}

impl FBound {
    /// The exact value, refusing results above `max_bits` bits.
    pub fn value(&self, max_bits: u64) -> Result<BigUint> {
        let base = factorial(self.factorial_of);
        if base.bits().saturating_mul(self.exponent) > max_bits {
            return Err(Error::CapExceeded {
                what: "f bound bit length",
                limit: max_bits,
                reached: base.bits().saturating_mul(self.exponent),
            });
        }
        Ok(num_traits::pow(base, self.exponent as usize))
    }

    /// `f(ρ, C) >= n`.
    pub fn at_least(&self, n: &BigUint) -> bool {
        if self.exponent == 0 {
            return n.is_one() || n.is_zero();
        }
        if factorial_at_least(self.factorial_of, n) {
            return true;
        }
        let base = factorial(self.factorial_of);
        let mut acc = BigUint::one();
        for _ in 0..self.exponent {
            acc *= &base;
            if acc >= *n {
                return true;
            }
        }
        false
    }

    /// `log10 f(ρ, C)`.
    pub fn log10(&self) -> f64 {
        let lf: f64 = (2..=self.factorial_of).map(|k| (k as f64).log10()).sum();
        lf * self.exponent as f64
    }
}

pub fn f_bound(rho: &BigRational, c: u64) -> Result<BigUint> {
    f_bound_parts(rho, c)?.value(1 << 24)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailCheck {
    pub bound: BigRational,
    pub empirical: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderBoundCheck {
    /// The bound is `factorial_of!`.
    pub factorial_of: BigUint,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkovChebyshevReport {
    pub eps: BigRational,
    /// `P(supp > (1−ε)n) >= 1 − t/(εn)`.
    pub markov: TailCheck,
    /// `P(supp > (1−ε)n − t) >= 1 − (r−t²)/(ε²n²)`.
    pub chebyshev: TailCheck,
    pub c: usize,
    pub rho: BigRational,
    /// `|P| <= ⌊tρ⁻¹ + C⌋!`.
    pub markov_order: OrderBoundCheck,
    /// `|P| <= ⌊√(r−t²)ρ⁻¹ + t + C⌋!`.
    pub chebyshev_order: OrderBoundCheck,
}

impl MarkovChebyshevReport {
    pub fn holds(&self) -> bool {
        self.markov.holds
            && self.chebyshev.holds
            && self.markov_order.holds
            && self.chebyshev_order.holds
    }
}

fn factorial_at_least_big(m: &BigUint, n: &BigUint) -> bool {
    match m.to_u64() {
        Some(m) => factorial_at_least(m, n),
        None => true,
    }
}

pub fn markov_chebyshev_report(
    stats: &SupportStats,
    eps: &BigRational,
    c: usize,
) -> Result<MarkovChebyshevReport> {
    if *eps <= BigRational::zero() || *eps >= BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} is outside (0, 1)"
        )));
    }
    let n = int(stats.degree);
    let t = int(stats.t);
    let order = ratio(stats.order, 1);
    let one = BigRational::one();

    let markov_bound = if stats.degree == 0 {
        BigRational::zero()
    } else {
        &one - &t / (eps * &n)
    };
    let markov_emp = ratio(stats.count_support_above(&((&one - eps) * &n)), 1) / &order;
    let var = int(stats.r) - &t * &t;
    let cheb_bound = if stats.degree == 0 {
        BigRational::zero()
    } else {
        &one - &var / (eps * eps * &n * &n)
    };
    let cheb_emp = ratio(stats.count_support_above(&((&one - eps) * &n - &t)), 1) / &order;

    let s = BigUint::from(stats.sb_count(c));
    let big_order = BigUint::from(stats.order);
    let tt = BigUint::from(stats.t);
    let cc = BigUint::from(c);
    let markov_arg = &tt * &big_order / &s + &cc;
    let d = BigUint::from(stats.r - stats.t * stats.t);
    let cheb_arg = (d * &big_order * &big_order).sqrt() / &s + &tt + &cc;

    Ok(MarkovChebyshevReport {
        eps: eps.clone(),
        markov: TailCheck {
            holds: markov_emp >= markov_bound,
            bound: markov_bound,
            empirical: markov_emp,
        },
        chebyshev: TailCheck {
            holds: cheb_emp >= cheb_bound,
            bound: cheb_bound,
            empirical: cheb_emp,
        },
        c,
        rho: stats.rho(c),
        markov_order: OrderBoundCheck {
            holds: factorial_at_least_big(&markov_arg, &big_order),
            factorial_of: markov_arg,
        },
        chebyshev_order: OrderBoundCheck {
            holds: factorial_at_least_big(&cheb_arg, &big_order),
            factorial_of: cheb_arg,
        },
    })
}

/// Every subgroup of `Sym(4)`, each exactly once. All of them are
/// generated by two elements, so pairs suffice.
pub fn sym4_subgroups() -> Vec<PermGroup> {
    let all = crate::group::sym(4)
        .and_then(|g| g.elements(24))
        .expect("Sym(4) enumerates");
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            let g = PermGroup::new(4, vec![a.clone(), b.clone()]).expect("degree 4");
            let mut elems = g.elements(24).expect("subgroup of Sym(4)");
            elems.sort();
            if seen.insert(elems) {
                out.push(g);
            }
        }
    }
    out
}

/// `count` reproducible 2-generator subgroups of `Sym(n)`, `n` cycling
/// through 5..=8. Each generator is a uniform permutation of a random set of
/// points, so intransitive and small groups occur alongside `Alt(n)`/`Sym(n)`.
pub fn random_subgroups(seed: u64, count: usize) -> Vec<PermGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = 5 + i % 4;
            let gens = (0..2)
                .map(|_| {
                    let k = rng.gen_range(2..=n);
                    let mut points: Vec<u32> = (0..n as u32).collect();
                    points.shuffle(&mut rng);
                    let moved = &points[..k];
                    let mut targets = moved.to_vec();
                    targets.shuffle(&mut rng);
                    let mut images: Vec<u32> = (0..n as u32).collect();
                    for (&x, &y) in moved.iter().zip(&targets) {
                        images[x as usize] = y;
                    }
                    Permutation::from_images(images).expect("bijection")
                })
                .collect();
            PermGroup::new(n, gens).expect("valid generators")
        })
        .collect()
}

pub const CORPUS_SEED: u64 = 20_240_531;

/// Subgroups of `Sym(4)` followed by 200 random subgroups of `Sym(5..8)`.
pub fn bound_corpus() -> Vec<PermGroup> {
    let mut out = sym4_subgroups();
    out.extend(random_subgroups(CORPUS_SEED, 200));
    out
}
