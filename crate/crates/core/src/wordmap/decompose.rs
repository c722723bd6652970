//! Splitting `w(y_1, …, y_d) = ψ` in a wreath product `A ≀ Sym(n)` into a
//! word equation on the tops and one coset word equation per coordinate.
//!
//! With `y_k = (α_{k,1}, …, α_{k,n})σ_k` and letters `x_{ι(j)}^{ε_j}`, let
//! `χ_j` be the top of the prefix `x_1^{ε_1}⋯x_{j-1}^{ε_{j-1}}` when
//! `ε_j = 1`, and of `x_1^{ε_1}⋯x_j^{ε_j}` when `ε_j = -1`. Coordinate `t`
//! of `w(y)` is then
//! `∏_j (s_{ι(j),χ_j⁻¹(t)} · α_{ι(j),χ_j⁻¹(t)})^{ε_j}`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupOps, Permutation, WreathElement, WreathProduct};
use crate::permstat::ln_biguint;
use crate::word::{Letter, Sign, Variable, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CosetFactor {
    /// Variable slot `ι(j)` (0-based, in [`Word::variables`] order).
    pub slot: usize,
    /// Coordinate `χ_j⁻¹(t)` (0-based).
    pub coord: usize,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetEquationSystem<E> {
    pub word: Word,
    /// `w(σ_1, …, σ_d)`.
    pub top_value: Permutation,
    /// `χ_j` for each letter.
    pub chis: Vec<Permutation>,
    /// `equations[t][j]` is the `j`-th factor of coordinate `t`.
    pub equations: Vec<Vec<CosetFactor>>,
    /// `coefficients[k][u] = α_{k,u}`.
    pub coefficients: Vec<Vec<E>>,
}

/// Builds the system for `w` at the given coset representatives, one per
/// variable of `w` in [`Word::variables`] order.
pub fn coordinate_decomposition<A: GroupOps>(
    wr: &WreathProduct<A>,
    w: &Word,
    reps: &[WreathElement<A::Elem>],
) -> Result<CosetEquationSystem<A::Elem>> {
    let cw = w.compile();
    if w.is_empty() {
        return Err(Error::InvalidArgument("the word must be nonempty".into()));
    }
    if reps.len() != cw.arity() {
        return Err(Error::InvalidArgument(format!(
            "{} representatives for {} variables",
            reps.len(),
            cw.arity()
        )));
    }
    let n = wr.n();
    if reps
        .iter()
        .any(|r| r.top.degree() != n || r.components.len() != n)
    {
        return Err(Error::InvalidArgument(format!(
            "representatives must have degree {n}"
        )));
    }
    let mut prefix = Permutation::identity(n);
    let mut chis = Vec::with_capacity(cw.code.len());
    for &(slot, inv) in &cw.code {
        let sigma = &reps[slot as usize].top;
        if inv {
            prefix = prefix.compose(&sigma.inverse());
            chis.push(prefix.clone());
        } else {
            chis.push(prefix.clone());
            prefix = prefix.compose(sigma);
        }
    }
    let chi_invs: Vec<Permutation> = chis.iter().map(|c| c.inverse()).collect();
    let equations = (0..n as u32)
        .map(|t| {
            cw.code
                .iter()
                .zip(&chi_invs)
                .map(|(&(slot, inv), ci)| CosetFactor {
                    slot: slot as usize,
                    coord: ci.image(t) as usize,
                    sign: if inv { Sign::Neg } else { Sign::Pos },
                })
                .collect()
        })
        .collect();
    Ok(CosetEquationSystem {
        word: w.clone(),
        top_value: prefix,
        chis,
        equations,
        coefficients: reps.iter().map(|r| r.components.clone()).collect(),
    })
}

impl<E: Clone> CosetEquationSystem<E> {
    pub fn degree(&self) -> usize {
        self.equations.len()
    }

    /// Coordinate `t` as a word in the variables `s_{k,u}`, written
    /// `x_{k+1, u+1}` (split index = coordinate).
    pub fn equation_word(&self, t: usize) -> Word {
        Word::from_letters(self.equations[t].iter().map(|f| {
            let var = Variable::with_split(f.slot as u32 + 1, f.coord as u32 + 1)
                .expect("positive indices");
            Letter::new(var, f.sign)
        }))
    }

    /// Multiplies the system back together: `s[k][u]` is the value of
    /// `s_{k,u}`.
    pub fn recompose<A: GroupOps<Elem = E>>(&self, base: &A, s: &[Vec<E>]) -> WreathElement<E> {
        let components = self
            .equations
            .iter()
            .map(|eq| {
                eq.iter().fold(base.identity(), |acc, f| {
                    let x = base.mul(&s[f.slot][f.coord], &self.coefficients[f.slot][f.coord]);
                    let x = if f.sign == Sign::Neg { base.inv(&x) } else { x };
                    base.mul(&acc, &x)
                })
            })
            .collect();
        WreathElement {
            components,
            top: self.top_value.clone(),
        }
    }
}

/// `C(ρ)` together with the residual of its defining identity
/// `(1 − N^{−ℓ})^{C/ℓ²} = ρ/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CRho {
    pub value: f64,
    /// Relative error of the defining identity.
    pub residual: f64,
}

impl CRho {
    pub fn identity_holds(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// `C(ρ) = ℓ² · log(2/ρ) / log(1 + 1/(N^ℓ − 1))`.
pub fn c_rho_threshold(rho: &BigRational, len: u32, n: u64) -> Result<CRho> {
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    if *rho <= zero || *rho > one {
        return Err(Error::InvalidArgument(format!(
            "rho = {rho} must lie in (0, 1]"
        )));
    }
    if len == 0 || n < 2 {
        return Err(Error::InvalidArgument(
            "need word length ≥ 1 and N ≥ 2".into(),
        ));
    }
    let r = rho.to_f64().expect("finite");
    let l = len as f64;
    // x = N^{-ℓ}; log(1 + 1/(N^ℓ − 1)) = −log(1 − x).
    let x = (-l * (n as f64).ln()).exp();
    let denom = -(-x).ln_1p();
    let value = l * l * (2.0 / r).ln() / denom;
    let lhs = ((value / (l * l)) * (-x).ln_1p()).exp();
    let rhs = r / 2.0;
    Ok(CRho {
        value,
        residual: ((lhs - rhs) / rhs).abs(),
    })
}

/// `N · log f / log 60 + 1`.
pub fn ppb_lambda_bound(n: u64, f_val: &BigUint) -> Result<f64> {
    if f_val.bits() == 0 {
        return Err(Error::InvalidArgument("f must be at least 1".into()));
    }
    Ok(ppb_lambda_bound_ln(n, ln_biguint(f_val)))
}

/// [`ppb_lambda_bound`] from `log f`, for values of `f` too large to hold.
pub fn ppb_lambda_bound_ln(n: u64, ln_f: f64) -> f64 {
    n as f64 * ln_f / 60f64.ln() + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SymGroup;
    use crate::word::parse_word;
    use std::collections::BTreeMap;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn square_under_swap_splits() {
        let base = SymGroup { degree: 5 };
        let wr = WreathProduct::new(base, 2);
        let a = wr.element(vec![p(5, "(1 2 3)"), p(5, "(1 4)(2 5)")], p(2, "(1 2)"));
        let w = parse_word("x^2").unwrap();
        let sys = coordinate_decomposition(&wr, &w, std::slice::from_ref(&a)).unwrap();
        assert!(sys.top_value.is_identity());
        for t in 0..2 {
            let coords: Vec<usize> = sys.equations[t].iter().map(|f| f.coord).collect();
            assert_ne!(coords[0], coords[1]);
            assert!(!sys.equation_word(t).erase_splits().is_repetition_free());
            assert!(sys.equation_word(t).is_repetition_free());
        }
        let s = vec![vec![base.identity(), base.identity()]];
        let mut assign = BTreeMap::new();
        assign.insert(w.variables()[0], a);
        assert_eq!(
            sys.recompose(&base, &s),
            crate::wordmap::evaluate(&wr, &w, &assign).unwrap()
        );
    }

    #[test]
    fn c_rho_values() {
        let one = BigRational::from_integer(1.into());
        let c = c_rho_threshold(&one, 1, 2).unwrap();
        assert!((c.value - 1.0).abs() < 1e-12);
        let half = BigRational::new(1.into(), 2.into());
        assert!(c_rho_threshold(&half, 3, 60).unwrap().identity_holds(1e-9));
        assert!(c_rho_threshold(&BigRational::from_integer(2.into()), 1, 2).is_err());
        assert!(c_rho_threshold(&one, 1, 1).is_err());
    }

    #[test]
    fn ppb_values() {
        assert_eq!(ppb_lambda_bound(7, &BigUint::from(1u32)).unwrap(), 1.0);
        assert!((ppb_lambda_bound(60, &BigUint::from(60u32)).unwrap() - 61.0).abs() < 1e-9);
        assert!((ppb_lambda_bound(1, &BigUint::from(60u32).pow(40)).unwrap() - 41.0).abs() < 1e-9);
    }
}
