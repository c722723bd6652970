//! Simple groups with a known automorphism group, and cosets `Sα` inside it.
//!
//! `Alt(n)` (n ∈ {5, 7, 8}) sits in `Sym(n)`, and `PSL₂(q)` sits in `PΓL₂(q)`
//! acting on the projective line. Outer classes are named by `(ε, t)`: for
//! `PSL₂(q)` the representative is `diag(ξ, 1)^ε · φ^t`, for `Alt(n)` it is
//! the identity (`ε = 0`) or `(1 2)` (`ε = 1`).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::prime_power;

use super::{alt, pgammal2, sym, wreath_product, Mat2, PermGroup, Permutation, PgammaL2};

/// Coset members are stored as permutations up to this many image entries.
const PRECOMPUTE_IMAGES: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleSpec {
    Alt(usize),
    Psl2(u64),
}

impl SimpleSpec {
    /// Validates membership in the catalog.
    pub fn check(&self) -> Result<()> {
        match *self {
            SimpleSpec::Alt(6) => Err(Error::Unsupported(
                "alt:6 is not in the catalog (Aut(A6) is not Sym(6)); use psl2:9".into(),
            )),
            SimpleSpec::Alt(n) if [5, 7, 8].contains(&n) => Ok(()),
            SimpleSpec::Alt(n) => Err(Error::Unsupported(format!(
                "alt:{n} is not in the catalog (supported: 5, 7, 8)"
            ))),
            SimpleSpec::Psl2(q) => {
                prime_power(q)
                    .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
                if q < 3 {
                    return Err(Error::Unsupported(format!("psl2:{q} is solvable")));
                }
                Ok(())
            }
        }
    }

    /// False only for `PSL₂(3)`, which the catalog accepts but which is not simple.
    pub fn is_simple(&self) -> bool {
        !matches!(self, SimpleSpec::Psl2(3))
    }

    pub fn order(&self) -> u64 {
        match *self {
            SimpleSpec::Alt(n) => (3..=n as u64).product(),
            SimpleSpec::Psl2(q) => q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 },
        }
    }

    /// Degree of the natural action used for `S` and `Aut(S)`.
    pub fn degree(&self) -> usize {
        match *self {
            SimpleSpec::Alt(n) => n,
            SimpleSpec::Psl2(q) => q as usize + 1,
        }
    }

    /// All outer classes `(ε, t)`, ε slowest.
    pub fn outer_classes(&self) -> Vec<OuterSpec> {
        match *self {
            SimpleSpec::Alt(_) => vec![OuterSpec { eps: 0, t: 0 }, OuterSpec { eps: 1, t: 0 }],
            SimpleSpec::Psl2(q) => {
                let (_, f) = prime_power(q).expect("checked");
                let eps_max = if q % 2 == 1 { 2 } else { 1 };
                (0..eps_max)
                    .flat_map(|eps| (0..f).map(move |t| OuterSpec { eps, t }))
                    .collect()
            }
        }
    }

    pub fn check_outer(&self, outer: OuterSpec) -> Result<()> {
        if self.outer_classes().contains(&outer) {
            return Ok(());
        }
        let msg = match *self {
            SimpleSpec::Psl2(q) if q % 2 == 0 && outer.eps == 1 => {
                format!("PGL2({q}) = PSL2({q}): no diagonal outer part in characteristic 2")
            }
            _ => format!("outer class {outer} does not exist for {self}"),
        };
        Err(Error::InvalidArgument(msg))
    }

    /// The full automorphism group in its natural action.
    pub fn automorphism_group(&self) -> Result<PermGroup> {
        match *self {
            SimpleSpec::Alt(n) => sym(n),
            SimpleSpec::Psl2(q) => pgammal2(q),
        }
    }
}

impl fmt::Display for SimpleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleSpec::Alt(n) => write!(f, "alt:{n}"),
            SimpleSpec::Psl2(q) => write!(f, "psl2:{q}"),
        }
    }
}

impl Serialize for SimpleSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for SimpleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = s.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!("expected alt:N or psl2:Q, got {s:?}"))
        })?;
        let n: u64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad number in {s:?}")))?;
        let spec = match kind.trim() {
            "alt" => SimpleSpec::Alt(n as usize),
            "psl2" => SimpleSpec::Psl2(n),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown simple group {kind:?} (expected alt or psl2)"
                )))
            }
        };
        spec.check()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OuterSpec {
    pub eps: u32,
    pub t: u32,
}

impl OuterSpec {
    pub const INNER: OuterSpec = OuterSpec { eps: 0, t: 0 };

    /// Parses `"eps,t"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .trim()
            .split_once(',')
            .ok_or_else(|| Error::InvalidArgument(format!("expected eps,t, got {s:?}")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("bad outer spec {s:?}")))
        };
        Ok(OuterSpec {
            eps: parse(a)?,
            t: parse(b)?,
        })
    }

    /// Parses a `;`-separated list of `eps,t` pairs.
    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        s.split(';')
            .filter(|p| !p.trim().is_empty())
            .map(OuterSpec::parse)
            .collect()
    }
}

impl fmt::Display for OuterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.eps, self.t)
    }
}

enum Elements {
    Perms(Vec<Permutation>),
    Matrices { pg: PgammaL2, mats: Vec<Mat2> },
}

/// A catalog simple group with its elements listed in a fixed order.
pub struct SimpleGroup {
    spec: SimpleSpec,
    elems: Elements,
}

impl fmt::Debug for SimpleGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGroup")
            .field("spec", &self.spec)
            .finish()
    }
}

impl SimpleGroup {
    pub fn new(spec: SimpleSpec) -> Result<Arc<Self>> {
        spec.check()?;
        let elems = match spec {
            SimpleSpec::Alt(n) => Elements::Perms(alt(n)?.elements(u64::MAX)?),
            SimpleSpec::Psl2(q) => {
                let pg = PgammaL2::new(q)?;
                let mats = pg.canonical_matrices(true);
                if mats.len() * pg.degree() <= PRECOMPUTE_IMAGES {
                    Elements::Perms(mats.iter().map(|m| pg.mat_to_perm(m, 0)).collect())
                } else {
                    Elements::Matrices { pg, mats }
                }
            }
        };
        Ok(Arc::new(SimpleGroup { spec, elems }))
    }

    pub fn spec(&self) -> SimpleSpec {
        self.spec
    }

    pub fn order(&self) -> usize {
        match &self.elems {
            Elements::Perms(v) => v.len(),
            Elements::Matrices { mats, .. } => mats.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    pub fn element(&self, i: usize) -> Permutation {
        match &self.elems {
            Elements::Perms(v) => v[i].clone(),
            Elements::Matrices { pg, mats } => pg.mat_to_perm(&mats[i], 0),
        }
    }

    /// The coset representative of `outer` as a permutation.
    pub fn outer_representative(&self, outer: OuterSpec) -> Result<Permutation> {
        self.spec.check_outer(outer)?;
        Ok(match self.spec {
            SimpleSpec::Alt(n) => {
                if outer.eps == 1 {
                    Permutation::from_cycles(n, &[vec![1, 2]])?
                } else {
                    Permutation::identity(n)
                }
            }
            SimpleSpec::Psl2(q) => {
                let pg = PgammaL2::new(q)?;
                let f = pg.field();
                let d = f.xi_pow(outer.eps as i64);
                pg.mat_to_perm(&pg.diag(d, f.one()), outer.t)
            }
        })
    }

    pub fn coset(self: &Arc<Self>, outer: OuterSpec) -> Result<AutCoset> {
        let alpha = self.outer_representative(outer)?;
        let alpha_mat = match &self.elems {
            Elements::Matrices { pg, .. } => {
                let f = pg.field();
                Some((pg.diag(f.xi_pow(outer.eps as i64), f.one()), outer.t))
            }
            _ => None,
        };
        Ok(AutCoset {
            group: Arc::clone(self),
            outer,
            alpha,
            alpha_mat,
        })
    }
}

/// The coset `Sα`, member `i` being `s_i · α`.
#[derive(Clone)]
pub struct AutCoset {
    group: Arc<SimpleGroup>,
    outer: OuterSpec,
    alpha: Permutation,
    alpha_mat: Option<(Mat2, u32)>,
}

impl fmt::Debug for AutCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AutCoset")
            .field("group", &self.group.spec)
            .field("outer", &self.outer)
            .finish()
    }
}

impl AutCoset {
    pub fn group(&self) -> &Arc<SimpleGroup> {
        &self.group
    }

    pub fn outer(&self) -> OuterSpec {
        self.outer
    }

    pub fn representative(&self) -> &Permutation {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    /// Writes the images of member `i` into `out`.
    pub fn member_into(&self, i: usize, out: &mut Vec<u32>) {
        match &self.group.elems {
            Elements::Perms(v) => {
                let s = v[i].images();
                out.clear();
                out.extend(self.alpha.images().iter().map(|&x| s[x as usize]));
            }
            Elements::Matrices { pg, mats } => {
                let (a, t) = self.alpha_mat.as_ref().expect("matrix coset");
                let m = pg.mat_mul(&mats[i], a);
                pg.mat_to_images(&m, *t, out);
            }
        }
    }

    pub fn member(&self, i: usize) -> Permutation {
        let mut out = Vec::with_capacity(self.degree());
        self.member_into(i, &mut out);
        Permutation::from_images_unchecked(out)
    }

    pub fn members(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.len()).map(move |i| self.member(i))
    }
}

/// `S ≀ top` on `n` copies of the natural `S`-set, extended by the diagonal
/// automorphisms `(α, …, α)` for each listed outer class.
pub fn wreath_semisimple(
    spec: SimpleSpec,
    n: usize,
    top: &PermGroup,
    lifts: &[OuterSpec],
) -> Result<PermGroup> {
    spec.check()?;
    let s = match spec {
        SimpleSpec::Alt(m) => alt(m)?,
        SimpleSpec::Psl2(q) => super::psl2(q)?,
    };
    let base = wreath_product(&s, n, top)?;
    let simple = SimpleGroup::new(spec)?;
    let m = spec.degree();
    let mut gens = base.gens().to_vec();
    for &outer in lifts {
        let a = simple.outer_representative(outer)?;
        let images = (0..n * m)
            .map(|p| ((p / m) * m) as u32 + a.image((p % m) as u32))
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    PermGroup::new(n * m, gens)
}
