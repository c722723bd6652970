//! Wreath products `A ≀ Sym(n)` with elements `(a_1, …, a_n)σ`.
//!
//! Acting on `(s_1, …, s_n)`, the element first moves coordinate `t` to
//! `σ(t)` and then applies `a_t` in each coordinate `t`. As a consequence
//! `(a σ)(b τ) = (c, στ)` with `c_t = a_t · b_{σ⁻¹(t)}`.

use serde::Serialize;

use super::{GroupOps, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WreathElement<E> {
    pub components: Vec<E>,
    pub top: Permutation,
}

#[derive(Clone, Debug)]
pub struct WreathProduct<A> {
    base: A,
    n: usize,
}

impl<A: GroupOps> WreathProduct<A> {
    pub fn new(base: A, n: usize) -> Self {
        WreathProduct { base, n }
    }

    pub fn base(&self) -> &A {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Panics when the component count disagrees with the top degree.
    pub fn element(&self, components: Vec<A::Elem>, top: Permutation) -> WreathElement<A::Elem> {
        assert_eq!(components.len(), self.n, "component count");
        assert_eq!(top.degree(), self.n, "top degree");
        WreathElement { components, top }
    }

    pub fn base_element(&self, components: Vec<A::Elem>) -> WreathElement<A::Elem> {
        self.element(components, Permutation::identity(self.n))
    }

    pub fn top_element(&self, top: Permutation) -> WreathElement<A::Elem> {
        self.element(vec![self.base.identity(); self.n], top)
    }

    /// Action on a tuple of base elements `(s_1, …, s_n)`, with `a_t`
    /// applied by left multiplication.
    pub fn act_on_tuple(&self, x: &WreathElement<A::Elem>, s: &[A::Elem]) -> Vec<A::Elem> {
        let inv = x.top.inverse();
        (0..self.n)
            .map(|t| {
                let src = inv.image(t as u32) as usize;
                self.base.mul(&x.components[t], &s[src])
            })
            .collect()
    }

    /// The imprimitive permutation of `n·m` points, point `(t, y)` numbered
    /// `t·m + y`, given how base elements act on `m` points.
    pub fn to_perm_with(
        &self,
        x: &WreathElement<A::Elem>,
        m: usize,
        base_perm: impl Fn(&A::Elem) -> Permutation,
    ) -> Permutation {
        let mut images = vec![0u32; self.n * m];
        for s in 0..self.n {
            let t = x.top.image(s as u32) as usize;
            let a = base_perm(&x.components[t]);
            for y in 0..m {
                images[s * m + y] = (t * m) as u32 + a.image(y as u32);
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

impl<A: GroupOps> GroupOps for WreathProduct<A> {
    type Elem = WreathElement<A::Elem>;

    fn identity(&self) -> Self::Elem {
        self.top_element(Permutation::identity(self.n))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let sigma_inv = a.top.inverse();
        let components = (0..self.n)
            .map(|t| {
                let src = sigma_inv.image(t as u32) as usize;
                self.base.mul(&a.components[t], &b.components[src])
            })
            .collect();
        WreathElement {
            components,
            top: a.top.compose(&b.top),
        }
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        let components = (0..self.n)
            .map(|t| {
                let src = a.top.image(t as u32) as usize;
                self.base.inv(&a.components[src])
            })
            .collect();
        WreathElement {
            components,
            top: a.top.inverse(),
        }
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        a.top.is_identity() && a.components.iter().all(|c| self.base.is_identity(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SymGroup;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn product_matches_imprimitive_action() {
        let w = WreathProduct::new(SymGroup { degree: 3 }, 2);
        let xs = [
            w.element(vec![p(3, "(1 2)"), p(3, "(1 2 3)")], p(2, "(1 2)")),
            w.element(vec![p(3, "(2 3)"), p(3, "()")], p(2, "()")),
            w.element(vec![p(3, "(1 3 2)"), p(3, "(1 3)")], p(2, "(1 2)")),
        ];
        let to_perm = |x: &WreathElement<Permutation>| w.to_perm_with(x, 3, |a| a.clone());
        for a in &xs {
            assert!(w.is_identity(&w.mul(a, &w.inv(a))));
            for b in &xs {
                assert_eq!(to_perm(&w.mul(a, b)), to_perm(a).compose(&to_perm(b)));
            }
        }
    }

    #[test]
    fn tuple_action_is_a_left_action() {
        let w = WreathProduct::new(SymGroup { degree: 3 }, 3);
        let a = w.element(
            vec![p(3, "(1 2)"), p(3, "()"), p(3, "(1 2 3)")],
            p(3, "(1 2 3)"),
        );
        let b = w.element(
            vec![p(3, "(2 3)"), p(3, "(1 3)"), p(3, "()")],
            p(3, "(1 2)"),
        );
        let s = vec![p(3, "(1 2)"), p(3, "(2 3)"), p(3, "()")];
        assert_eq!(
            w.act_on_tuple(&w.mul(&a, &b), &s),
            w.act_on_tuple(&a, &w.act_on_tuple(&b, &s))
        );
    }
}
