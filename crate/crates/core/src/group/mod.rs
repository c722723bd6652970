//! Finite groups: element types, the enumerated and stabilizer-chain engines,
//! and the concrete constructions.

mod bsgs;
mod catalog;
mod construct;
mod dsl;
mod enumerated;
mod perm;
mod semilinear;
mod subgroup;
mod wreath;

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

pub use bsgs::{Bsgs, PermGroup, DEFAULT_MAX_DEGREE};
pub use catalog::{wreath_semisimple, AutCoset, OuterSpec, SimpleGroup, SimpleSpec};
pub use construct::{
    alt, cyclic, dihedral, dihedral_subdirect_power, direct_product, hadamard_perm_group, pgammal2,
    pgl2, psl2, regular_representation, sl2, sym, wreath_product, DihedralSubdirectPower,
};
pub use dsl::{parse_group_spec, GroupSpec};
pub use enumerated::{generate_enumerated, EnumeratedGroup, DEFAULT_ENUMERATION_CAP};
pub use perm::Permutation;
pub use semilinear::{Mat2, PgammaL2, ProjectiveSemilinearMap};
pub use subgroup::{class_representatives, quotient_enumerated, Subgroup};
pub use wreath::{WreathElement, WreathProduct};

/// Multiplication, inversion and identity for one concrete element type.
pub trait GroupOps: Sync + Send {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut result = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        result
    }

    fn element_order(&self, a: &Self::Elem) -> u64 {
        let mut x = a.clone();
        let mut k = 1;
        while !self.is_identity(&x) {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }
}

/// The symmetric group on `degree` points as an element domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymGroup {
    pub degree: usize,
}

impl GroupOps for SymGroup {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn inv(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn is_identity(&self, a: &Permutation) -> bool {
        a.is_identity()
    }

    fn pow(&self, a: &Permutation, e: i64) -> Permutation {
        a.pow(e)
    }

    fn element_order(&self, a: &Permutation) -> u64 {
        a.order()
    }
}

/// A finite group realized by one of the two engines.
#[derive(Clone, Debug)]
pub enum GroupHandle {
    Enumerated(Arc<EnumeratedGroup>),
    Bsgs(Arc<PermGroup>),
}

impl GroupHandle {
    pub fn order(&self) -> num_bigint::BigUint {
        match self {
            GroupHandle::Enumerated(g) => g.order().into(),
            GroupHandle::Bsgs(g) => g.order(),
        }
    }

    pub fn as_enumerated(&self) -> Option<&Arc<EnumeratedGroup>> {
        match self {
            GroupHandle::Enumerated(g) => Some(g),
            GroupHandle::Bsgs(_) => None,
        }
    }

    pub fn as_perm_group(&self) -> Option<&Arc<PermGroup>> {
        match self {
            GroupHandle::Enumerated(_) => None,
            GroupHandle::Bsgs(g) => Some(g),
        }
    }
}

/// `lcm` of element orders of an explicit set.
pub fn exponent_of<G: GroupOps>(group: &G, elems: impl IntoIterator<Item = G::Elem>) -> u64 {
    elems.into_iter().fold(1u64, |acc, g| {
        num_integer::lcm(acc, group.element_order(&g))
    })
}
