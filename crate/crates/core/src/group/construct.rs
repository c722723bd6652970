//! Concrete permutation groups.

use crate::error::{Error, Result};

use super::{
    generate_enumerated, EnumeratedGroup, PermGroup, Permutation, PgammaL2, DEFAULT_MAX_DEGREE,
};

fn check_degree(degree: usize) -> Result<()> {
    if degree > DEFAULT_MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: "permutation degree",
            limit: DEFAULT_MAX_DEGREE as u64,
            reached: degree as u64,
        });
    }
    Ok(())
}

fn cycle(n: usize, points: &[u32]) -> Permutation {
    Permutation::from_cycles(n, &[points.to_vec()]).expect("valid cycle")
}

/// `Sym(n)` on `n` points, generated by `(1 2)` and `(1 2 … n)`.
pub fn sym(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("sym needs n >= 1".into()));
    }
    check_degree(n)?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, &[1, 2]));
        gens.push(cycle(n, &(1..=n as u32).collect::<Vec<_>>()));
    }
    PermGroup::new(n, gens)
}

/// `Alt(n)` on `n` points, generated by the 3-cycles `(1 2 i)`.
pub fn alt(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("alt needs n >= 1".into()));
    }
    check_degree(n)?;
    let gens = (3..=n as u32).map(|i| cycle(n, &[1, 2, i])).collect();
    PermGroup::new(n, gens)
}

/// The cyclic group of order `n` acting regularly.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyc needs n >= 1".into()));
    }
    check_degree(n)?;
    PermGroup::new(n, vec![cycle(n, &(1..=n as u32).collect::<Vec<_>>())])
}

/// The dihedral group of order `n` (`n` even), on `n/2` points for
/// `n >= 6`; orders 2 and 4 are realized as `C2` and `C2 × C2`.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    match n {
        2 => PermGroup::new(2, vec![cycle(2, &[1, 2])]),
        4 => PermGroup::new(4, vec![cycle(4, &[1, 2]), cycle(4, &[3, 4])]),
        n if n >= 6 && n % 2 == 0 => {
            let m = n / 2;
            check_degree(m)?;
            let rotation = cycle(m, &(1..=m as u32).collect::<Vec<_>>());
            let reflection = Permutation::from_images_unchecked(
                (0..m as u32).map(|i| (m as u32 - i) % m as u32).collect(),
            );
            PermGroup::new(m, vec![rotation, reflection])
        }
        _ => Err(Error::InvalidArgument(format!(
            "dihedral group order must be even and positive, got {n}"
        ))),
    }
}

/// `SL₂(q)` acting on the `q² − 1` nonzero vectors of `F_q²`.
pub fn sl2(q: u64) -> Result<PermGroup> {
    let g = PgammaL2::new(q)?;
    check_degree((q * q - 1) as usize)?;
    let gens = g
        .sl2_generators()
        .iter()
        .map(|m| g.vector_action(m))
        .collect();
    PermGroup::new((q * q - 1) as usize, gens)
}

/// `PSL₂(q)` on the `q + 1` points of the projective line.
pub fn psl2(q: u64) -> Result<PermGroup> {
    let g = PgammaL2::new(q)?;
    check_degree(g.degree())?;
    let gens = g
        .sl2_generators()
        .iter()
        .map(|m| g.mat_to_perm(m, 0))
        .collect();
    PermGroup::new(g.degree(), gens)
}

/// `PGL₂(q)`: `PSL₂(q)` plus `diag(ξ, 1)`.
pub fn pgl2(q: u64) -> Result<PermGroup> {
    let g = PgammaL2::new(q)?;
    let mut gens = psl2(q)?.gens().to_vec();
    let f = g.field();
    gens.push(g.mat_to_perm(&g.diag(f.xi(), f.one()), 0));
    PermGroup::new(g.degree(), gens)
}

/// `PΓL₂(q)`: `PGL₂(q)` plus the Frobenius map.
pub fn pgammal2(q: u64) -> Result<PermGroup> {
    let g = PgammaL2::new(q)?;
    let mut gens = pgl2(q)?.gens().to_vec();
    gens.push(g.to_perm(&g.frobenius_element(1)));
    PermGroup::new(g.degree(), gens)
}

/// `A × B` on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    check_degree(degree)?;
    let ida = Permutation::identity(a.degree());
    let idb = Permutation::identity(b.degree());
    let gens = a
        .gens()
        .iter()
        .map(|g| g.direct_sum(&idb))
        .chain(b.gens().iter().map(|g| ida.direct_sum(g)))
        .collect();
    PermGroup::new(degree, gens)
}

/// Left multiplication of `G` on its own elements, numbered as in `g`.
pub fn regular_representation(g: &EnumeratedGroup) -> Result<PermGroup> {
    let n = g.len();
    check_degree(n)?;
    let gens = g
        .gens()
        .iter()
        .map(|&s| {
            Permutation::from_images_unchecked((0..n as u32).map(|h| g.mul_idx(s, h)).collect())
        })
        .collect();
    PermGroup::new(n, gens)
}

/// The imprimitive wreath product `base ≀ top` on `m·n` points (`m` the
/// base degree, `n` the top degree); point `(t, y)` is `t·m + y`.
pub fn wreath_product(base: &PermGroup, n: usize, top: &PermGroup) -> Result<PermGroup> {
    if top.degree() != n {
        return Err(Error::InvalidArgument(format!(
            "top group has degree {}, expected {n}",
            top.degree()
        )));
    }
    let m = base.degree();
    let degree = m * n;
    check_degree(degree)?;
    let mut gens = Vec::new();
    for t in 0..n {
        for a in base.gens() {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for y in 0..m {
                images[t * m + y] = (t * m) as u32 + a.image(y as u32);
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
    }
    for s in top.gens() {
        let images = (0..degree)
            .map(|p| (s.image((p / m) as u32) as usize * m + p % m) as u32)
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    PermGroup::new(degree, gens)
}

/// The image of the punctured `[2^k, k, 2^(k−1)]` Hadamard code in
/// `Sym({1..2^k−1} × {0,1})`: codeword `c_x(y) = ⟨x, y⟩` becomes the product
/// of the transpositions `((y,0),(y,1))` over `y` with `c_x(y) = 1`. Point
/// `(y, b)` is numbered `2(y−1) + b`.
pub fn hadamard_perm_group(k: u32) -> Result<PermGroup> {
    if !(2..=10).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "hadamard needs 2 <= k <= 10, got {k}"
        )));
    }
    let coords = (1u32 << k) - 1;
    let degree = 2 * coords as usize;
    let gens = (0..k)
        .map(|j| {
            let x = 1u32 << j;
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for y in 1..=coords {
                if (x & y).count_ones() % 2 == 1 {
                    let a = 2 * (y - 1);
                    images.swap(a as usize, a as usize + 1);
                }
            }
            Permutation::from_images_unchecked(images)
        })
        .collect();
    PermGroup::new(degree, gens)
}

/// The subdirect power `P_m` of the regular `Sym(3)` built from all
/// `m`-tuples of involutions with at least two distinct entries.
#[derive(Clone, Debug)]
pub struct DihedralSubdirectPower {
    pub m: usize,
    /// Involution tuples in lexicographic order; entry values index the
    /// three involutions of `Sym(3)`.
    pub tuples: Vec<Vec<u32>>,
    pub group: PermGroup,
}

impl DihedralSubdirectPower {
    pub fn k(&self) -> usize {
        self.tuples.len()
    }
}

pub fn dihedral_subdirect_power(m: usize) -> Result<DihedralSubdirectPower> {
    if !(2..=5).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "ex35 needs 2 <= m <= 5, got {m}"
        )));
    }
    let s3 = generate_enumerated(3, sym(3)?.gens(), 6)?;
    let left: Vec<Permutation> = (0..6u32)
        .map(|g| Permutation::from_images_unchecked((0..6u32).map(|h| s3.mul_idx(g, h)).collect()))
        .collect();
    let involutions: Vec<&Permutation> = (0..6u32)
        .filter(|&g| s3.order_of(g) == 2)
        .map(|g| &left[g as usize])
        .collect();

    let mut tuples = Vec::new();
    for code in 0..3usize.pow(m as u32) {
        let tuple: Vec<u32> = (0..m)
            .rev()
            .map(|i| ((code / 3usize.pow(i as u32)) % 3) as u32)
            .collect();
        if tuple.iter().any(|&x| x != tuple[0]) {
            tuples.push(tuple);
        }
    }
    let degree = 6 * tuples.len();
    check_degree(degree)?;
    let gens = (0..m)
        .map(|i| {
            let mut images = Vec::with_capacity(degree);
            for (j, tuple) in tuples.iter().enumerate() {
                let s = involutions[tuple[i] as usize];
                images.extend(s.images().iter().map(|&y| (6 * j) as u32 + y));
            }
            Permutation::from_images_unchecked(images)
        })
        .collect();
    Ok(DihedralSubdirectPower {
        m,
        tuples,
        group: PermGroup::new(degree, gens)?,
    })
}
