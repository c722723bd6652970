//! Fully enumerated groups with elements numbered `0..order`, identity `0`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

use super::{GroupOps, Permutation};

pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// Multiplication tables are built lazily for groups up to this order.
const TABLE_MAX_ORDER: usize = 2048;

pub(crate) enum Realization {
    Perms {
        degree: usize,
        elems: Vec<Permutation>,
        index: HashMap<Permutation, u32>,
    },
    Quotient {
        parent: Arc<EnumeratedGroup>,
        reps: Vec<u32>,
        coset_of: Vec<u32>,
    },
}

pub struct EnumeratedGroup {
    gens: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    table: OnceLock<Vec<u32>>,
    repr: Realization,
}

impl fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

/// Breadth-first closure of `gens` (all of degree `degree`). Element 0 is
/// the identity; new elements are numbered in discovery order, right
/// multiplying by the generators in their sorted order.
pub fn generate_enumerated(
    degree: usize,
    gens: &[Permutation],
    cap: u64,
) -> Result<EnumeratedGroup> {
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(Error::MixedParents);
    }
    let mut sorted: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    sorted.sort();
    sorted.dedup();

    let id = Permutation::identity(degree);
    let mut elems = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut head = 0;
    let mut scratch = Permutation::identity(degree);
    while head < elems.len() {
        for g in &sorted {
            elems[head].compose_into(g, &mut scratch);
            if !index.contains_key(&scratch) {
                if elems.len() as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "enumeration",
                        limit: cap,
                        reached: elems.len() as u64 + 1,
                    });
                }
                index.insert(scratch.clone(), elems.len() as u32);
                elems.push(scratch.clone());
            }
        }
        head += 1;
    }

    let gen_idx = sorted.iter().map(|g| index[g]).collect();
    let inv = elems.iter().map(|e| index[&e.inverse()]).collect();
    let orders = elems.iter().map(|e| e.order() as u32).collect();
    Ok(EnumeratedGroup {
        gens: gen_idx,
        inv,
        orders,
        table: OnceLock::new(),
        repr: Realization::Perms {
            degree,
            elems,
            index,
        },
    })
}

impl EnumeratedGroup {
    pub(crate) fn from_quotient(
        parent: Arc<EnumeratedGroup>,
        reps: Vec<u32>,
        coset_of: Vec<u32>,
        gens: Vec<u32>,
    ) -> Self {
        let n = reps.len();
        let mul =
            |a: u32, b: u32| coset_of[parent.mul_idx(reps[a as usize], reps[b as usize]) as usize];
        let inv: Vec<u32> = reps
            .iter()
            .map(|&r| coset_of[parent.inv_idx(r) as usize])
            .collect();
        let orders = (0..n as u32)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        EnumeratedGroup {
            gens,
            inv,
            orders,
            table: OnceLock::new(),
            repr: Realization::Quotient {
                parent,
                reps,
                coset_of,
            },
        }
    }

    pub fn order(&self) -> u64 {
        self.inv.len() as u64
    }

    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    /// Degree of the underlying permutations, `None` for quotients.
    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            Realization::Perms { degree, .. } => Some(*degree),
            Realization::Quotient { .. } => None,
        }
    }

    pub fn permutation(&self, i: u32) -> Option<&Permutation> {
        match &self.repr {
            Realization::Perms { elems, .. } => elems.get(i as usize),
            Realization::Quotient { .. } => None,
        }
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        match &self.repr {
            Realization::Perms { elems, .. } => Some(elems),
            Realization::Quotient { .. } => None,
        }
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        match &self.repr {
            Realization::Perms { index, .. } => index.get(p).copied(),
            Realization::Quotient { .. } => None,
        }
    }

    /// For a quotient, the parent group and a representative of coset `i`.
    pub fn coset_representative(&self, i: u32) -> Option<(&Arc<EnumeratedGroup>, u32)> {
        match &self.repr {
            Realization::Quotient { parent, reps, .. } => Some((parent, reps[i as usize])),
            Realization::Perms { .. } => None,
        }
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        match &self.repr {
            Realization::Perms { elems, index, .. } => {
                index[&elems[a as usize].compose(&elems[b as usize])]
            }
            Realization::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.mul_idx(reps[a as usize], reps[b as usize]) as usize],
        }
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let n = self.len();
        if n <= TABLE_MAX_ORDER {
            let table = self.table.get_or_init(|| {
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n as u32 {
                    for b in 0..n as u32 {
                        t.push(self.raw_mul(a, b));
                    }
                }
                t
            });
            return table[a as usize * n + b as usize];
        }
        self.raw_mul(a, b)
    }

    #[inline]
    pub fn inv_idx(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g a g^-1`.
    pub fn conj_idx(&self, a: u32, g: u32) -> u32 {
        self.mul_idx(self.mul_idx(g, a), self.inv_idx(g))
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator_idx(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul_idx(a, b);
        let ba = self.mul_idx(b, a);
        self.mul_idx(ab, self.inv_idx(ba))
    }

    pub fn pow_idx(&self, a: u32, e: i64) -> u32 {
        let ord = self.orders[a as usize] as i64;
        let e = e.rem_euclid(ord);
        let mut result = 0;
        for _ in 0..e {
            result = self.mul_idx(result, a);
        }
        result
    }

    pub fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| {
            self.gens
                .iter()
                .all(|&b| self.mul_idx(a, b) == self.mul_idx(b, a))
        })
    }

    /// `(order, count)` pairs, ascending by order.
    pub fn order_statistics(&self) -> Vec<(u32, u64)> {
        let mut counts = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *counts.entry(o).or_insert(0u64) += 1;
        }
        counts.into_iter().collect()
    }
}

impl GroupOps for EnumeratedGroup {
    type Elem = u32;

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_idx(*a, *b)
    }

    fn inv(&self, a: &u32) -> u32 {
        self.inv_idx(*a)
    }

    fn is_identity(&self, a: &u32) -> bool {
        *a == 0
    }

    fn pow(&self, a: &u32, e: i64) -> u32 {
        self.pow_idx(*a, e)
    }

    fn element_order(&self, a: &u32) -> u64 {
        self.orders[*a as usize] as u64
    }
}
