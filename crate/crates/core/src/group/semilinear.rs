//! PΓL₂(q) as projective 2×2 matrices paired with a Frobenius power.
//!
//! `(M, j)` acts on the projective line by `v ↦ M · φ^j(v)`, where φ raises
//! coordinates to the p-th power. Hence `(M₁, j₁)(M₂, j₂) = (M₁ φ^{j₁}(M₂), j₁ + j₂)`.
//! Points are numbered `0..q` for `(x : 1)` with `x` of rep `i`, and `q` for
//! `∞ = (1 : 0)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec};

use super::{GroupOps, Permutation};

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [FieldElement; 4]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveSemilinearMap {
    mat: Mat2,
    frob: u32,
}

impl ProjectiveSemilinearMap {
    pub fn mat(&self) -> Mat2 {
        self.mat
    }

    pub fn frob(&self) -> u32 {
        self.frob
    }
}

#[derive(Clone, Debug)]
pub struct PgammaL2 {
    field: Arc<FieldSpec>,
}

impl PgammaL2 {
    pub fn new(q: u64) -> Result<Self> {
        Ok(PgammaL2 {
            field: Arc::new(FieldSpec::of_order(q)?),
        })
    }

    pub fn with_field(field: Arc<FieldSpec>) -> Self {
        PgammaL2 { field }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Number of points of the projective line.
    pub fn degree(&self) -> usize {
        self.q() as usize + 1
    }

    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let f = &*self.field;
        let [a, b, c, d] = x.0;
        let [e, g, h, k] = y.0;
        Mat2([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
    }

    pub fn det(&self, m: &Mat2) -> FieldElement {
        let f = &*self.field;
        let [a, b, c, d] = m.0;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    pub fn frobenius_mat(&self, m: &Mat2, j: u32) -> Mat2 {
        if j == 0 {
            return *m;
        }
        Mat2(m.0.map(|x| self.field.frobenius(x, j)))
    }

    /// The representative whose first nonzero entry (row-major) is 1.
    pub fn canonical(&self, m: &Mat2) -> Mat2 {
        let lead = m.0.iter().copied().find(|x| !x.is_zero());
        match lead {
            None => *m,
            Some(l) if l == FieldElement::ONE => *m,
            Some(l) => {
                let s = self.field.inv(l).expect("nonzero");
                Mat2(m.0.map(|x| self.field.mul(s, x)))
            }
        }
    }

    pub fn element(&self, m: Mat2, frob: u32) -> Result<ProjectiveSemilinearMap> {
        if m.0.iter().any(|&x| !self.field.contains(x)) {
            return Err(Error::MixedParents);
        }
        if self.det(&m).is_zero() {
            return Err(Error::InvalidArgument("singular matrix".into()));
        }
        Ok(ProjectiveSemilinearMap {
            mat: self.canonical(&m),
            frob: frob % self.field.degree(),
        })
    }

    pub fn matrix(&self, m: Mat2) -> Result<ProjectiveSemilinearMap> {
        self.element(m, 0)
    }

    pub fn diag(&self, a: FieldElement, d: FieldElement) -> Mat2 {
        Mat2([a, FieldElement::ZERO, FieldElement::ZERO, d])
    }

    pub fn unipotent(&self, x: FieldElement) -> Mat2 {
        Mat2([FieldElement::ONE, x, FieldElement::ZERO, FieldElement::ONE])
    }

    /// `[[0, -1], [1, 0]]`.
    pub fn weyl(&self) -> Mat2 {
        Mat2([
            FieldElement::ZERO,
            self.field.neg(FieldElement::ONE),
            FieldElement::ONE,
            FieldElement::ZERO,
        ])
    }

    pub fn identity_mat(&self) -> Mat2 {
        self.diag(FieldElement::ONE, FieldElement::ONE)
    }

    /// The pure field automorphism `φ^t`.
    pub fn frobenius_element(&self, t: u32) -> ProjectiveSemilinearMap {
        ProjectiveSemilinearMap {
            mat: self.identity_mat(),
            frob: t % self.field.degree(),
        }
    }

    /// The adjugate, equal to the inverse up to a scalar.
    pub fn mat_inverse(&self, m: &Mat2) -> Mat2 {
        let f = &*self.field;
        let [a, b, c, d] = m.0;
        Mat2([d, f.neg(b), f.neg(c), a])
    }

    pub fn is_in_pgl2(&self, x: &ProjectiveSemilinearMap) -> bool {
        x.frob == 0
    }

    pub fn is_in_psl2(&self, x: &ProjectiveSemilinearMap) -> bool {
        x.frob == 0 && self.field.is_square(self.det(&x.mat))
    }

    pub fn point_index(&self, x: FieldElement, y: FieldElement) -> u32 {
        let f = &*self.field;
        if y.is_zero() {
            self.q()
        } else {
            f.div(x, y).expect("nonzero").rep()
        }
    }

    /// Image of projective point `pt` under `(mat, frob)`.
    pub fn act(&self, mat: &Mat2, frob: u32, pt: u32) -> u32 {
        let f = &*self.field;
        let [a, b, c, d] = mat.0;
        if pt == self.q() {
            return self.point_index(a, c);
        }
        let x = f.frobenius(FieldElement::from_raw(pt), frob);
        self.point_index(f.add(f.mul(a, x), b), f.add(f.mul(c, x), d))
    }

    pub fn to_perm(&self, x: &ProjectiveSemilinearMap) -> Permutation {
        self.mat_to_perm(&x.mat, x.frob)
    }

    pub fn mat_to_perm(&self, mat: &Mat2, frob: u32) -> Permutation {
        let images = (0..self.degree() as u32)
            .map(|pt| self.act(mat, frob, pt))
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Writes the permutation of `(mat, frob)` into `out`.
    pub fn mat_to_images(&self, mat: &Mat2, frob: u32, out: &mut Vec<u32>) {
        out.clear();
        out.extend((0..self.degree() as u32).map(|pt| self.act(mat, frob, pt)));
    }

    /// Canonical matrices of PGL₂(q); with `square_det`, only those of PSL₂(q).
    /// Order: leading entry `a = 1` first, then `a = 0, b = 1`, entries by rep.
    pub fn canonical_matrices(&self, square_det: bool) -> Vec<Mat2> {
        let f = &*self.field;
        let q = self.q();
        let mut out = Vec::new();
        let one = FieldElement::ONE;
        let mut push = |m: Mat2| {
            let det = self.det(&m);
            if !det.is_zero() && (!square_det || f.is_square(det)) {
                out.push(m);
            }
        };
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    push(Mat2([
                        one,
                        FieldElement::from_raw(b),
                        FieldElement::from_raw(c),
                        FieldElement::from_raw(d),
                    ]));
                }
            }
        }
        for c in 0..q {
            for d in 0..q {
                push(Mat2([
                    FieldElement::ZERO,
                    one,
                    FieldElement::from_raw(c),
                    FieldElement::from_raw(d),
                ]));
            }
        }
        out
    }

    /// Generators `u(ξ^k)` for `k < f` and the Weyl element; they generate SL₂(q).
    pub fn sl2_generators(&self) -> Vec<Mat2> {
        let mut gens: Vec<Mat2> = (0..self.field.degree())
            .map(|k| self.unipotent(self.field.xi_pow(k as i64)))
            .collect();
        gens.push(self.weyl());
        gens
    }

    /// Action of a matrix on the `q² - 1` nonzero column vectors; vector
    /// `(x, y)` is point `x.rep * q + y.rep - 1`.
    pub fn vector_action(&self, m: &Mat2) -> Permutation {
        let f = &*self.field;
        let q = self.q();
        let [a, b, c, d] = m.0;
        let images = (1..q * q)
            .map(|idx| {
                let x = FieldElement::from_raw(idx / q);
                let y = FieldElement::from_raw(idx % q);
                let nx = f.add(f.mul(a, x), f.mul(b, y));
                let ny = f.add(f.mul(c, x), f.mul(d, y));
                nx.rep() * q + ny.rep() - 1
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn format(&self, x: &ProjectiveSemilinearMap) -> String {
        let e: Vec<String> = x.mat.0.iter().map(|&v| self.field.format(v)).collect();
        format!(
            "[[{}, {}], [{}, {}]] phi^{}",
            e[0], e[1], e[2], e[3], x.frob
        )
    }
}

impl GroupOps for PgammaL2 {
    type Elem = ProjectiveSemilinearMap;

    fn identity(&self) -> ProjectiveSemilinearMap {
        self.frobenius_element(0)
    }

    fn mul(
        &self,
        x: &ProjectiveSemilinearMap,
        y: &ProjectiveSemilinearMap,
    ) -> ProjectiveSemilinearMap {
        let twisted = self.frobenius_mat(&y.mat, x.frob);
        ProjectiveSemilinearMap {
            mat: self.canonical(&self.mat_mul(&x.mat, &twisted)),
            frob: (x.frob + y.frob) % self.field.degree(),
        }
    }

    fn inv(&self, x: &ProjectiveSemilinearMap) -> ProjectiveSemilinearMap {
        let f = self.field.degree();
        let back = (f - x.frob) % f;
        ProjectiveSemilinearMap {
            mat: self.canonical(&self.frobenius_mat(&self.mat_inverse(&x.mat), back)),
            frob: back,
        }
    }
}
