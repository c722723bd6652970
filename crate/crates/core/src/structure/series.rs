//! The characteristic series `G_k ⊵ R_k`, `H_k = G_k/R_k`, `T_k = Soc(H_k)`,
//! `G_{k+1} = H_k/T_k`, and `λ(G)`, the number of nontrivial `T_k`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{quotient_enumerated, EnumeratedGroup, PermGroup, Permutation};

use super::{
    enumerate, permutation_part, semisimple_certificate, semisimple_decomposition, ser_big, socle,
    solvable_radical,
};

/// `auto` enumerates groups up to this order.
pub const DEFAULT_LAMBDA_MAX_ORDER: u64 = 100_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    #[default]
    Auto,
    Enumerated,
    Bsgs,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "enum" | "enumerated" => Ok(Engine::Enumerated),
            "bsgs" => Ok(Engine::Bsgs),
            _ => Err(Error::InvalidArgument(format!(
                "unknown engine {s:?} (auto, enum, bsgs)"
            ))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Auto => "auto",
            Engine::Enumerated => "enum",
            Engine::Bsgs => "bsgs",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaOptions {
    pub engine: Engine,
    /// Enumeration cap; `auto` enumerates at or below it.
    pub max_order: u64,
}

impl Default for LambdaOptions {
    fn default() -> Self {
        LambdaOptions {
            engine: Engine::Auto,
            max_order: DEFAULT_LAMBDA_MAX_ORDER,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelEngine {
    /// Radical and socle computed in the enumerated group.
    Enumerated,
    /// Radical and socle computed, then recursion on the permutation part.
    PermutationPart,
    /// Trivial radical and socle certified on a stabilizer chain, then
    /// recursion on the permutation part.
    BsgsCertificate,
    /// The group is solvable; the series stops here.
    Solvable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesLevel {
    pub k: usize,
    #[serde(serialize_with = "ser_big")]
    pub g_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub r_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub h_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub t_order: BigUint,
    pub engine: LevelEngine,
}

impl SeriesLevel {
    fn solvable(k: usize, order: BigUint) -> Self {
        SeriesLevel {
            k,
            r_order: order.clone(),
            g_order: order,
            h_order: BigUint::one(),
            t_order: BigUint::one(),
            engine: LevelEngine::Solvable,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharSeriesReport {
    pub levels: Vec<SeriesLevel>,
    pub lambda: usize,
}

impl CharSeriesReport {
    fn new(levels: Vec<SeriesLevel>) -> Self {
        let lambda = levels.iter().filter(|l| !l.t_order.is_one()).count();
        CharSeriesReport { levels, lambda }
    }

    pub fn order(&self) -> &BigUint {
        &self.levels[0].g_order
    }

    /// `|G_k| = |R_k|·|H_k|`, `|H_k| = |T_k|·|G_{k+1}|`, and the last level
    /// has `H` trivial, so `|G| = ∏ |R_k|·|T_k|`.
    pub fn telescopes(&self) -> bool {
        let local = self
            .levels
            .iter()
            .all(|l| l.g_order == &l.r_order * &l.h_order);
        let chained = self
            .levels
            .windows(2)
            .all(|w| w[0].h_order == &w[0].t_order * &w[1].g_order);
        let product: BigUint = self
            .levels
            .iter()
            .map(|l| &l.r_order * &l.t_order)
            .product();
        local && chained && product == *self.order()
    }

    /// `T_k` is trivial exactly at the last level, where `H_k` is trivial too.
    pub fn terminates_consistently(&self) -> bool {
        let (last, rest) = self.levels.split_last().expect("at least one level");
        last.t_order.is_one()
            && last.h_order.is_one()
            && rest
                .iter()
                .all(|l| !l.t_order.is_one() && !l.h_order.is_one())
    }

    /// `[G : Rad(G)] ≥ 60^λ`.
    pub fn radical_index_bound(&self) -> bool {
        self.levels[0].h_order >= BigUint::from(60u32).pow(self.lambda as u32)
    }
}

/// The series computed literally in the enumerated group and its quotients.
pub fn series_enumerated(g: &Arc<EnumeratedGroup>) -> Result<CharSeriesReport> {
    let mut levels = Vec::new();
    let mut cur = Arc::clone(g);
    loop {
        let k = levels.len() + 1;
        let r = solvable_radical(&cur);
        let h = quotient_enumerated(&cur, &r)?;
        let t = socle(&h);
        levels.push(SeriesLevel {
            k,
            g_order: cur.order().into(),
            r_order: r.order().into(),
            h_order: h.order().into(),
            t_order: t.order().into(),
            engine: LevelEngine::Enumerated,
        });
        if h.order() == 1 {
            break;
        }
        if t.is_trivial() {
            return Err(Error::Invariant(
                "nontrivial group without solvable normal subgroups has trivial socle".into(),
            ));
        }
        cur = quotient_enumerated(&h, &t)?;
    }
    Ok(CharSeriesReport::new(levels))
}

/// Prepends `first` to the series of the permutation part `P` of `H_1`.
/// `G_2 = H_1/T_1` maps onto `P` with solvable kernel, so the series of
/// `G_2` is that of `P` with a larger first radical.
fn prepend(first: SeriesLevel, sub: CharSeriesReport) -> CharSeriesReport {
    let g2 = &first.h_order / &first.t_order;
    let mut levels = vec![first];
    for (i, mut l) in sub.levels.into_iter().enumerate() {
        if i == 0 {
            l.r_order = &l.r_order * &g2 / &l.g_order;
            l.g_order = g2.clone();
        }
        l.k = levels.len() + 1;
        levels.push(l);
    }
    CharSeriesReport::new(levels)
}

/// `λ(G) = 0` for solvable `G`, else `1 + λ(P(H_1))`, all in enumerated groups.
pub fn series_perm_part(g: &Arc<EnumeratedGroup>) -> Result<CharSeriesReport> {
    let r = solvable_radical(g);
    if r.order() == g.order() {
        return Ok(CharSeriesReport::new(vec![SeriesLevel::solvable(
            1,
            g.order().into(),
        )]));
    }
    let h = quotient_enumerated(g, &r)?;
    let dec = semisimple_decomposition(&h)?;
    let part = permutation_part(&h, &dec)?;
    let p = enumerate(&part.group, u64::MAX)?;
    let first = SeriesLevel {
        k: 1,
        g_order: g.order().into(),
        r_order: r.order().into(),
        h_order: h.order().into(),
        t_order: dec.socle.order().into(),
        engine: LevelEngine::PermutationPart,
    };
    Ok(prepend(first, series_perm_part(&p)?))
}

fn series_bsgs(g: &PermGroup, opts: LambdaOptions) -> Result<CharSeriesReport> {
    if g.is_solvable() {
        return Ok(CharSeriesReport::new(vec![SeriesLevel::solvable(
            1,
            g.order(),
        )]));
    }
    let Some((cert, part)) =
        semisimple_certificate(g, opts.max_order.max(DEFAULT_LAMBDA_MAX_ORDER))?
    else {
        return Err(Error::Unsupported(format!(
            "no trivial-radical certificate for this group of order {}; the stabilizer-chain engine \
             needs a transitive group whose socle is a product of block factors (raise --max-order \
             to enumerate instead)",
            g.order()
        )));
    };
    let first = SeriesLevel {
        k: 1,
        g_order: g.order(),
        r_order: BigUint::one(),
        h_order: g.order(),
        t_order: cert.socle_order,
        engine: LevelEngine::BsgsCertificate,
    };
    let sub = nonsolvable_length(
        &part.group,
        LambdaOptions {
            engine: Engine::Auto,
            ..opts
        },
    )?;
    Ok(prepend(first, sub))
}

/// `λ(G)` with the requested engine.
pub fn nonsolvable_length(g: &PermGroup, opts: LambdaOptions) -> Result<CharSeriesReport> {
    let small = g.order() <= BigUint::from(opts.max_order);
    match opts.engine {
        Engine::Enumerated => series_enumerated(&enumerate(g, opts.max_order)?),
        Engine::Auto if small => series_enumerated(&enumerate(g, opts.max_order)?),
        Engine::Auto | Engine::Bsgs => series_bsgs(g, opts),
    }
}

/// 2-adic valuation.
pub fn nu2(n: &BigUint) -> u32 {
    n.trailing_zeros().unwrap_or(0) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaBoundVerdict {
    Holds,
    Fails,
    /// Sampling found no element with enough 2-part; nothing is claimed.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaBoundReport {
    pub lambda: usize,
    /// Exact exponent when the group was enumerated.
    pub exponent: Option<u64>,
    /// `ν₂(exp G)`, or a lower bound from an explicit element when inexact.
    pub nu2: u32,
    pub exact: bool,
    /// Element whose order realizes `nu2` (sampled path only).
    pub witness: Option<Permutation>,
    pub verdict: LambdaBoundVerdict,
}

/// Checks `λ(G) ≤ ν₂(exp G)`. Large groups are sampled: an element of order
/// divisible by `2^λ` proves the bound, failing to find one proves nothing.
pub fn check_lambda_exponent_bound(
    g: &PermGroup,
    opts: LambdaOptions,
    samples: u64,
    seed: u64,
) -> Result<LambdaBoundReport> {
    let lambda = nonsolvable_length(g, opts)?.lambda;
    if g.order() <= BigUint::from(opts.max_order) {
        let e = enumerate(g, opts.max_order)?;
        let exponent = e.exponent();
        let v = nu2(&exponent.into());
        return Ok(LambdaBoundReport {
            lambda,
            exponent: Some(exponent),
            nu2: v,
            exact: true,
            witness: None,
            verdict: if lambda as u32 <= v {
                LambdaBoundVerdict::Holds
            } else {
                LambdaBoundVerdict::Fails
            },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(u32, Permutation)> = None;
    for _ in 0..samples {
        let x = g.random_element(&mut rng);
        let v = nu2(&x.order_big());
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, x));
        }
        if v >= lambda as u32 {
            break;
        }
    }
    let (v, witness) = best.map_or((0, None), |(v, x)| (v, Some(x)));
    Ok(LambdaBoundReport {
        lambda,
        exponent: None,
        nu2: v,
        exact: false,
        witness,
        verdict: if lambda as u32 <= v {
            LambdaBoundVerdict::Holds
        } else {
            LambdaBoundVerdict::Unverified
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alt, direct_product, sl2, sym, wreath_product, DEFAULT_ENUMERATION_CAP};

    fn both(g: &PermGroup) -> (CharSeriesReport, CharSeriesReport) {
        let e = enumerate(g, DEFAULT_ENUMERATION_CAP).unwrap();
        (
            series_enumerated(&e).unwrap(),
            series_perm_part(&e).unwrap(),
        )
    }

    #[test]
    fn small_groups() {
        for (g, lambda) in [
            (sym(4).unwrap(), 0),
            (sym(5).unwrap(), 1),
            (sl2(5).unwrap(), 1),
            (
                wreath_product(&alt(5).unwrap(), 2, &sym(2).unwrap()).unwrap(),
                1,
            ),
            (direct_product(&alt(5).unwrap(), &psl2_7()).unwrap(), 1),
        ] {
            let (full, part) = both(&g);
            assert_eq!(full.lambda, lambda);
            assert_eq!(part.lambda, lambda);
            assert!(full.telescopes() && part.telescopes(), "{full:?} {part:?}");
            assert!(full.terminates_consistently() && part.terminates_consistently());
            assert!(full.radical_index_bound());
            assert_eq!(full.levels.len(), part.levels.len());
            for (a, b) in full.levels.iter().zip(&part.levels) {
                assert_eq!(
                    (&a.g_order, &a.r_order, &a.t_order),
                    (&b.g_order, &b.r_order, &b.t_order)
                );
            }
        }
    }

    fn psl2_7() -> PermGroup {
        crate::group::psl2(7).unwrap()
    }

    #[test]
    fn sym5_series() {
        let (full, _) = both(&sym(5).unwrap());
        let orders: Vec<(u64, u64, u64, u64)> = full
            .levels
            .iter()
            .map(|l| {
                let f = |x: &BigUint| u64::try_from(x).unwrap();
                (f(&l.g_order), f(&l.r_order), f(&l.h_order), f(&l.t_order))
            })
            .collect();
        assert_eq!(orders, vec![(120, 1, 120, 60), (2, 2, 1, 1)]);
    }

    #[test]
    fn iterated_wreath_has_length_two() {
        let a5 = alt(5).unwrap();
        let g = wreath_product(&a5, 5, &a5).unwrap();
        let r = nonsolvable_length(&g, LambdaOptions::default()).unwrap();
        assert_eq!(r.lambda, 2);
        assert!(r.telescopes() && r.terminates_consistently() && r.radical_index_bound());
        assert_eq!(r.levels[0].engine, LevelEngine::BsgsCertificate);
        let p = check_lambda_exponent_bound(&g, LambdaOptions::default(), 10_000, 1).unwrap();
        assert_eq!(p.verdict, LambdaBoundVerdict::Holds);
        assert!(p.nu2 >= 2);
    }

    #[test]
    fn lambda_bound_exact() {
        let p =
            check_lambda_exponent_bound(&alt(5).unwrap(), LambdaOptions::default(), 0, 0).unwrap();
        assert_eq!(
            (p.lambda, p.exponent, p.nu2, p.verdict),
            (1, Some(30), 1, LambdaBoundVerdict::Holds)
        );
        let p =
            check_lambda_exponent_bound(&sl2(5).unwrap(), LambdaOptions::default(), 0, 0).unwrap();
        assert_eq!((p.exponent, p.nu2), (Some(60), 2));
    }

    #[test]
    fn engines_are_explicit() {
        let g = crate::group::hadamard_perm_group(4).unwrap();
        let opts = LambdaOptions {
            engine: Engine::Bsgs,
            max_order: 10,
        };
        assert_eq!(nonsolvable_length(&g, opts).unwrap().lambda, 0);
        let opts = LambdaOptions {
            engine: Engine::Enumerated,
            max_order: 10,
        };
        assert!(matches!(
            nonsolvable_length(&sym(5).unwrap(), opts),
            Err(Error::CapExceeded { .. })
        ));
        let opts = LambdaOptions {
            engine: Engine::Bsgs,
            max_order: 10,
        };
        assert!(matches!(
            nonsolvable_length(&sl2(5).unwrap(), opts),
            Err(Error::Unsupported(_))
        ));
    }
}
