//! Small finite fields F_{p^f} with Zech-logarithm tables.
//!
//! Elements are stored by discrete logarithm: rep 0 is zero and rep `1 + k`
//! is `ξ^k` for the fixed primitive element ξ. Polynomial representatives are
//! encoded as integers `Σ c_i p^i` (coefficient of `u^0` least significant);
//! this encoding also defines the lexicographic order used to pick the
//! modulus and ξ.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub(crate) fn from_raw(rep: u32) -> Self {
        FieldElement(rep)
    }

    pub fn rep(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// `Some(k)` with `self = ξ^k`, `None` for zero.
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }
}

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `antilog[k]` = polynomial code of ξ^k.
    antilog: Vec<u32>,
    /// `log_rep[c]` = rep of the element with polynomial code c.
    log_rep: Vec<u32>,
    /// `zech[k]` = rep of 1 + ξ^k.
    zech: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{} (modulus {:?})", self.q, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^f` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut m, mut f) = (q, 0);
    while m % p == 0 {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p as u32, f))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial arithmetic over F_p, coefficients low degree first.
struct PolyRing {
    p: u32,
}

impl PolyRing {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn rem(&self, a: &[u32], m: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut r: Vec<u32> = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = mod_pow(m[dm] as u64, p - 2, p);
        while r.len() > dm && !r.is_empty() {
            let top = *r.last().unwrap() as u64;
            if top == 0 {
                r.pop();
                continue;
            }
            let c = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                let v = (r[shift + i] as u64 + p - c * mi as u64 % p) % p;
                r[shift + i] = v as u32;
            }
            r.pop();
        }
        Self::trim(r)
    }

    fn mul_mod(&self, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u64;
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        self.rem(&prod, m)
    }

    fn pow_mod(&self, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut base = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_mod(&result, &base, m);
            }
            base = self.mul_mod(&base, &base, m);
            e >>= 1;
        }
        result
    }

    fn decode(&self, mut code: u64, len: usize) -> Vec<u32> {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push((code % self.p as u64) as u32);
            code /= self.p as u64;
        }
        Self::trim(v)
    }

    fn encode(&self, a: &[u32]) -> u64 {
        a.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl FieldSpec {
    pub fn new(p: u64, f: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidArgument(
                "field degree must be positive".into(),
            ));
        }
        let q = (p as u128)
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD_SIZE as u128);
        let Some(q) = q else {
            return Err(Error::CapExceeded {
                what: "field size",
                limit: MAX_FIELD_SIZE,
                reached: (p as u128).saturating_pow(f).min(u64::MAX as u128) as u64,
            });
        };
        let (p, q) = (p as u32, q as u32);
        let ring = PolyRing { p };
        let flen = f as usize;

        let modulus = (0..q as u64)
            .map(|c| {
                let mut m = ring.decode(c, flen);
                m.resize(flen, 0);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(&ring, m))
            .expect("an irreducible polynomial exists in every degree");

        let n = q as u64 - 1;
        let factors = prime_factors(n);
        let xi = (1..q as u64)
            .map(|c| ring.decode(c, flen))
            .find(|g| {
                factors
                    .iter()
                    .all(|&r| ring.pow_mod(g, n / r, &modulus) != vec![1u32])
            })
            .expect("the multiplicative group is cyclic");

        let mut antilog = Vec::with_capacity(n as usize);
        let mut log_rep = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for k in 0..n as u32 {
            let code = ring.encode(&cur) as u32;
            antilog.push(code);
            log_rep[code as usize] = k + 1;
            cur = ring.mul_mod(&cur, &xi, &modulus);
        }

        let zech = antilog
            .iter()
            .map(|&code| {
                let c0 = code % p;
                let bumped = code - c0 + (c0 + 1) % p;
                log_rep[bumped as usize]
            })
            .collect();

        Ok(FieldSpec {
            p,
            f,
            q,
            modulus,
            antilog,
            log_rep,
            zech,
        })
    }

    /// The field with `q` elements.
    pub fn of_order(q: u64) -> Result<FieldSpec> {
        let (p, f) = prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        FieldSpec::new(p as u64, f)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first; monic of degree f.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn n(&self) -> u32 {
        self.q - 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn xi(&self) -> FieldElement {
        self.xi_pow(1)
    }

    pub fn xi_pow(&self, k: i64) -> FieldElement {
        FieldElement(1 + k.rem_euclid(self.n() as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    pub fn from_rep(&self, rep: u32) -> Result<FieldElement> {
        if rep < self.q {
            Ok(FieldElement(rep))
        } else {
            Err(Error::IndexOutOfRange(format!(
                "field rep {rep} outside 0..{}",
                self.q
            )))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let c = v.rem_euclid(self.p as i64) as usize;
        FieldElement(self.log_rep[c])
    }

    /// Polynomial code `Σ c_i p^i` of `a`.
    pub fn poly_code(&self, a: FieldElement) -> u32 {
        match a.log() {
            None => 0,
            Some(k) => self.antilog[k as usize],
        }
    }

    pub fn from_poly_code(&self, code: u32) -> Result<FieldElement> {
        if code >= self.q {
            return Err(Error::IndexOutOfRange(format!("polynomial code {code}")));
        }
        Ok(FieldElement(self.log_rep[code as usize]))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a.log(), b.log()) {
            (Some(x), Some(y)) => FieldElement(1 + (x + y) % self.n()),
            _ => FieldElement::ZERO,
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let k = a.log().ok_or(Error::ZeroInverse)?;
        Ok(FieldElement(1 + (self.n() - k) % self.n()))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        match a.log() {
            None if e > 0 => Ok(FieldElement::ZERO),
            None if e == 0 => Ok(FieldElement::ONE),
            None => Err(Error::ZeroInverse),
            Some(k) => {
                let n = self.n() as i128;
                let l = (k as i128 * e as i128).rem_euclid(n);
                Ok(FieldElement(1 + l as u32))
            }
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match a.log() {
            None => a,
            Some(_) if self.p == 2 => a,
            Some(k) => FieldElement(1 + (k + self.n() / 2) % self.n()),
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (x, y) = match (a.log(), b.log()) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(x), Some(y)) => (x, y),
        };
        let n = self.n();
        let z = self.zech[((y + n - x) % n) as usize];
        if z == 0 {
            FieldElement::ZERO
        } else {
            FieldElement(1 + (x + z - 1) % n)
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// `a^(p^t)`.
    pub fn frobenius(&self, a: FieldElement, t: u32) -> FieldElement {
        match a.log() {
            None => a,
            Some(k) => {
                let n = self.n() as u64;
                let pt = mod_pow(self.p as u64, t as u64, n.max(1));
                FieldElement(1 + ((k as u64 * pt) % n.max(1)) as u32)
            }
        }
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        match a.log() {
            None => true,
            Some(_) if self.p == 2 => true,
            Some(k) => k % 2 == 0,
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FieldElement) -> Result<u32> {
        let k = a.log().ok_or(Error::ZeroInverse)?;
        let n = self.n();
        Ok(n / num_integer::gcd(n, k))
    }

    /// `0`, `1`, or `z^k` for ξ^k; prime fields print the integer value.
    pub fn format(&self, a: FieldElement) -> String {
        if self.f == 1 {
            return self.poly_code(a).to_string();
        }
        match a.log() {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "z".into(),
            Some(k) => format!("z^{k}"),
        }
    }
}

fn is_irreducible(ring: &PolyRing, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (ring.p as u64).pow(d as u32);
        for c in 0..count {
            let mut g = ring.decode(c, d);
            g.resize(d, 0);
            g.push(1);
            if ring.rem(m, &g).is_empty() {
                return false;
            }
        }
    }
    true
}
