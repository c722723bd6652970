//! Transferring identities of a semisimple group `H` to its permutation
//! part `P(H)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{EnumeratedGroup, OuterSpec, Permutation, SimpleSpec};
use crate::word::Word;
use crate::wordmap::{
    bad_exponent_scan, perm_identity_witness, satisfies_identity, wmb_refute, BadScanReport,
};

use super::{permutation_part, semisimple_decomposition, ser_big};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub length: u64,
    /// `e / length`, required to be witnessed bad.
    pub quotient: u64,
    pub witnessed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerTransferReport {
    pub e: u64,
    pub h_exponent: u64,
    #[serde(serialize_with = "ser_big")]
    pub p_order: BigUint,
    pub p_exponent: u64,
    /// `exp(P(H))` divides `e/2`.
    pub half_holds: bool,
    pub isotypes: Vec<Option<SimpleSpec>>,
    /// Bad divisors witnessed over the isotypes of `H` (absent when some
    /// isotype is outside the catalog).
    pub bad: Option<BadScanReport>,
    pub cycles: Vec<CycleCheck>,
    /// Every cycle length `ℓ` of `P(H)` has `e/ℓ` witnessed bad.
    pub cycles_hold: Option<bool>,
    /// `exp(P(H))` divides `e / gcd(BAD(e))`.
    pub gcd_holds: Option<bool>,
}

impl PowerTransferReport {
    pub fn holds(&self) -> bool {
        self.half_holds && self.cycles_hold != Some(false) && self.gcd_holds != Some(false)
    }
}

/// For `H` semisimple with `H ⊨ x^e`: checks `P(H) ⊨ x^{e/2}` and the
/// finer statement that `P(H) ⊨ x^{e/gcd(BAD(e))}` because every cycle of
/// `P(H)` has a length `e/d` with `d` bad.
pub fn transfer_check_power(
    h: &Arc<EnumeratedGroup>,
    e: u64,
    exec: &Exec,
) -> Result<PowerTransferReport> {
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let h_exponent = h.exponent();
    if !e.is_multiple_of(h_exponent) {
        return Err(Error::Precondition(format!(
            "H does not satisfy x^{e}: exp(H) = {h_exponent}"
        )));
    }
    let dec = semisimple_decomposition(h)?;
    let part = permutation_part(h, &dec)?;
    let elems = part.group.elements(u64::MAX)?;
    let p_exponent = elems.iter().fold(1u64, |acc, x| acc.lcm(&x.order()));
    let half_holds = e.is_multiple_of(2) && (e / 2).is_multiple_of(p_exponent);
    let lengths: BTreeSet<u64> = elems
        .iter()
        .flat_map(|x| x.cycle_lengths())
        .map(|l| l as u64)
        .collect();
    let isotypes: Vec<Option<SimpleSpec>> = dec.isotypes.iter().map(|t| t.simple).collect();
    let catalog: Option<Vec<SimpleSpec>> = isotypes.iter().copied().collect();
    let bad = catalog
        .map(|c| bad_exponent_scan(e, &c, exec))
        .transpose()?;
    let cycles: Vec<CycleCheck> = lengths
        .iter()
        .map(|&length| CycleCheck {
            length,
            quotient: e / length,
            witnessed: e.is_multiple_of(length)
                && bad.as_ref().is_some_and(|b| b.bad.contains(&(e / length))),
        })
        .collect();
    let cycles_hold = bad.as_ref().map(|_| cycles.iter().all(|c| c.witnessed));
    let gcd_holds = bad.as_ref().map(|b| match b.gcd {
        Some(g) => (e / g).is_multiple_of(p_exponent),
        None => false,
    });
    Ok(PowerTransferReport {
        e,
        h_exponent,
        p_order: part.group.order(),
        p_exponent,
        half_holds,
        isotypes,
        bad,
        cycles,
        cycles_hold,
        gcd_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HypothesisVerdict {
    /// Every `(i, j)`-split variation is a coset identity over no catalog
    /// coset of any isotype of `H`.
    Holds,
    /// A split variation is a coset identity over some isotype.
    Fails {
        variation: Word,
        simple: SimpleSpec,
        outers: Vec<OuterSpec>,
    },
    /// Some isotype is outside the catalog.
    Unknown { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentVerdict {
    /// Hypothesis and conclusion both hold.
    Confirmed,
    /// The hypothesis could not be established; nothing follows.
    Inconclusive,
    /// Hypothesis holds but `P(H)` violates `Δ_{i,j}(w)`.
    Contradiction,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegmentTransferReport {
    pub word: Word,
    pub i: usize,
    pub j: usize,
    pub delta: Word,
    pub split_variations: Vec<Word>,
    pub hypothesis: HypothesisVerdict,
    /// `P(H) ⊨ Δ_{i,j}(w)`.
    pub conclusion: bool,
    pub counterexample: Option<Vec<Permutation>>,
    pub verdict: SegmentVerdict,
}

/// For `H` semisimple with `H ⊨ w` and equal letters at positions `i < j`:
/// checks that the `(i, j)`-split variations admit no coset identity over the
/// isotypes of `H`, and that `P(H) ⊨ Δ_{i,j}(w)`.
pub fn segment_transfer_check(
    h: &Arc<EnumeratedGroup>,
    w: &Word,
    i: usize,
    j: usize,
    budget: u64,
    exec: &Exec,
) -> Result<SegmentTransferReport> {
    let delta = w.delta_segment(i, j)?;
    if w.letters()[i - 1] != w.letters()[j - 1] {
        return Err(Error::Precondition(format!(
            "letters {i} and {j} of {w} differ"
        )));
    }
    if !satisfies_identity(w, h, budget, exec)? {
        return Err(Error::Precondition(format!("H does not satisfy {w} = 1")));
    }
    let dec = semisimple_decomposition(h)?;
    let part = permutation_part(h, &dec)?;
    let (split_variations, mut hypothesis) = match w.split_variations(i, j) {
        Ok(v) => (v, HypothesisVerdict::Holds),
        Err(e) if e.is_resource_limit() => (
            Vec::new(),
            HypothesisVerdict::Unknown {
                reason: e.to_string(),
            },
        ),
        Err(e) => return Err(e),
    };
    'outer: for iso in &dec.isotypes {
        if hypothesis != HypothesisVerdict::Holds {
            break;
        }
        let Some(spec) = iso.simple else {
            hypothesis = HypothesisVerdict::Unknown {
                reason: format!(
                    "simple factor of order {} is not in the catalog",
                    iso.fingerprint.order
                ),
            };
            break;
        };
        for v in &split_variations {
            if let Some(outers) = wmb_refute(v, spec, budget, exec)?.witness {
                hypothesis = HypothesisVerdict::Fails {
                    variation: v.clone(),
                    simple: spec,
                    outers,
                };
                break 'outer;
            }
        }
    }

    let elems = part.group.elements(u64::MAX)?;
    let counterexample = perm_identity_witness(&delta, &elems, budget, exec)?;
    let conclusion = counterexample.is_none();
    let verdict = match (&hypothesis, conclusion) {
        (HypothesisVerdict::Holds, true) => SegmentVerdict::Confirmed,
        (HypothesisVerdict::Holds, false) => SegmentVerdict::Contradiction,
        _ => SegmentVerdict::Inconclusive,
    };
    Ok(SegmentTransferReport {
        word: w.clone(),
        i,
        j,
        delta,
        split_variations,
        hypothesis,
        conclusion,
        counterexample,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alt, direct_product, sym, wreath_product};
    use crate::structure::enumerate;
    use crate::word::parse_word;

    fn a5_wr_c2() -> Arc<EnumeratedGroup> {
        enumerate(
            &wreath_product(&alt(5).unwrap(), 2, &sym(2).unwrap()).unwrap(),
            10_000,
        )
        .unwrap()
    }

    #[test]
    fn power_transfer() {
        let exec = Exec::sequential();
        let h = a5_wr_c2();
        let r = transfer_check_power(&h, 60, &exec).unwrap();
        assert_eq!((r.h_exponent, r.p_exponent), (60, 2));
        assert!(r.holds());
        assert_eq!(r.cycles_hold, Some(true));
        let a5 = alt(5).unwrap();
        let aa = enumerate(&direct_product(&a5, &a5).unwrap(), 10_000).unwrap();
        let r = transfer_check_power(&aa, 30, &exec).unwrap();
        assert!(r.holds() && r.p_exponent == 1);
        assert!(matches!(
            transfer_check_power(&aa, 4, &exec),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn segment_transfer() {
        let exec = Exec::sequential();
        let a5 = alt(5).unwrap();
        let aa = enumerate(&direct_product(&a5, &a5).unwrap(), 10_000).unwrap();
        let r = segment_transfer_check(&aa, &parse_word("x^30").unwrap(), 1, 2, 1 << 30, &exec)
            .unwrap();
        assert!(r.conclusion);
        assert_eq!(r.verdict, SegmentVerdict::Inconclusive);
        let h = a5_wr_c2();
        assert!(matches!(
            segment_transfer_check(&h, &parse_word("x^4").unwrap(), 1, 2, 1 << 30, &exec),
            Err(Error::Precondition(_))
        ));
        let r = segment_transfer_check(&h, &parse_word("x^60").unwrap(), 1, 31, 1 << 30, &exec);
        assert!(r.is_err() || r.unwrap().conclusion);
    }
}
