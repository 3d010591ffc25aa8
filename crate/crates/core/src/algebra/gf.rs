//! Finite fields with table-driven multiplication.
//!
//! Elements are packed coefficient vectors: for a field built as `base[x]/(f)`
//! the element `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` is stored as
//! `sum c_i * |base|^i`. Since the base is itself packed the same way down to
//! the prime field, every encoding is a base-p digit string, addition is
//! digitwise mod p, and constants of the base keep their encoding in the
//! extension.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct FqElem(pub u32);

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Description of `F_q`, `q = p^e`, over the prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Monic modulus over `Z/p`, lowest degree first (`[0, 1]` when `e = 1`).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u32 {
        self.p.pow(self.e)
    }
}

struct Inner {
    p: u32,
    /// Degree over the prime field.
    degree: u32,
    size: u32,
    base_size: u32,
    /// Modulus over the immediate base, lowest degree first, monic.
    modulus: Vec<FqElem>,
    /// `exp[i] = g^i` for `i < 2(size-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.size)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.size == other.0.size
                && self.0.base_size == other.0.base_size
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for GaloisField {}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^e`, or `None` when `q` is not a prime power.
pub(crate) fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, e))
}

type FieldCache = Mutex<HashMap<(u32, u32, u32), GaloisField>>;

fn cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// The field with `q` elements, built over `Z/p` with the lexicographically
    /// smallest monic irreducible modulus (coefficients compared from the
    /// constant term up).
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::InvalidField(q))?;
        if q > (1 << 24) {
            return Err(Error::InvalidField(q));
        }
        let key = (p, 1, e);
        if let Some(f) = cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let prime = Self::prime(p);
        let field = if e == 1 { prime } else { prime.build_extension(e) };
        cache().lock().unwrap().insert(key, field.clone());
        Ok(field)
    }

    /// Degree-`m` extension of `self`, again with the smallest modulus.
    pub fn extension(&self, m: u32) -> Result<Self> {
        if m == 1 {
            return Ok(self.clone());
        }
        let size = (self.size() as u64).checked_pow(m).filter(|s| *s <= 1 << 24);
        if size.is_none() {
            return Err(Error::InvalidField(u32::MAX));
        }
        let key = (self.0.p, self.size(), m);
        if let Some(f) = cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let field = self.build_extension(m);
        cache().lock().unwrap().insert(key, field.clone());
        Ok(field)
    }

    fn prime(p: u32) -> Self {
        let mulp = |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;
        let g = (1..p.max(2))
            .find(|&g| {
                let mut x = 1;
                (1..p).all(|i| {
                    x = mulp(x, g);
                    x != 1 || i == p - 1
                })
            })
            .unwrap_or(1);
        Self::from_generator(p, 1, p, p, vec![FqElem(0), FqElem(1)], g, mulp)
    }

    fn build_extension(&self, m: u32) -> Self {
        let base = self.clone();
        let bs = base.size();
        let ring = super::PolyRing::new(base.clone());
        let modulus = smallest_irreducible(&ring, m as usize);
        let size = bs.pow(m);
        let decode = |mut x: u32| {
            let mut v = Vec::with_capacity(m as usize);
            for _ in 0..m {
                v.push(FqElem(x % bs));
                x /= bs;
            }
            super::FqPoly::from_coeffs(v)
        };
        let encode = |p: &super::FqPoly| {
            p.coeffs().iter().rev().fold(0u32, |acc, c| acc * bs + c.0)
        };
        let modpoly = super::FqPoly::from_coeffs(modulus.clone());
        let slow_mul = |a: u32, b: u32| {
            let prod = ring.mul(&decode(a), &decode(b));
            encode(&ring.rem(&prod, &modpoly))
        };
        let g = (1..size)
            .find(|&g| {
                let mut x = 1;
                (1..size).all(|i| {
                    x = slow_mul(x, g);
                    x != 1 || i == size - 1
                })
            })
            .expect("multiplicative group of a finite field is cyclic");
        Self::from_generator(base.0.p, base.0.degree * m, size, bs, modulus, g, slow_mul)
    }

    fn from_generator(
        p: u32,
        degree: u32,
        size: u32,
        base_size: u32,
        modulus: Vec<FqElem>,
        g: u32,
        mul: impl Fn(u32, u32) -> u32,
    ) -> Self {
        let order = (size - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; size as usize];
        let mut x = 1u32;
        for i in 0..order.max(1) {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = mul(x, g);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        let mut field = Inner { p, degree, size, base_size, modulus, exp, log, add_table: None };
        if size <= 256 && p != 2 {
            let mut table = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    table[(a * size + b) as usize] = digit_add(p, a, b);
                }
            }
            field.add_table = Some(table);
        }
        GaloisField(Arc::new(field))
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    /// Modulus over the immediate base field, lowest degree first.
    pub fn modulus(&self) -> &[FqElem] {
        &self.0.modulus
    }

    /// Prime-field description; only meaningful for fields built by [`GaloisField::new`].
    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            e: self.0.degree,
            modulus: self.0.modulus.iter().map(|c| c.0).collect(),
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.size).map(FqElem)
    }

    /// Nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.0.size).map(FqElem)
    }

    pub fn elem(&self, code: u32) -> FqElem {
        debug_assert!(code < self.0.size);
        FqElem(code)
    }

    /// Coefficient vector over `Z/p`, lowest first, length = degree.
    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.0.degree)
            .map(|_| {
                let d = x % self.0.p;
                x /= self.0.p;
                d
            })
            .collect()
    }

    /// True when `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: FqElem) -> bool {
        a.0 < self.0.p
    }

    #[inline]
    pub fn add_e(&self, a: FqElem, b: FqElem) -> FqElem {
        let inner = &*self.0;
        if inner.p == 2 {
            FqElem(a.0 ^ b.0)
        } else if let Some(t) = &inner.add_table {
            FqElem(t[(a.0 * inner.size + b.0) as usize])
        } else {
            FqElem(digit_add(inner.p, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg_e(&self, a: FqElem) -> FqElem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % p;
            out += ((p - d) % p) * place;
            x /= p;
            place *= p;
        }
        FqElem(out)
    }

    #[inline]
    pub fn mul_e(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        let inner = &*self.0;
        FqElem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    #[inline]
    pub fn inv_e(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.0;
        let order = inner.size - 1;
        let l = inner.log[a.0 as usize];
        Some(FqElem(inner.exp[((order - l) % order.max(1)) as usize]))
    }
}

fn digit_add(p: u32, mut a: u32, mut b: u32) -> u32 {
    let (mut out, mut place) = (0u32, 1u32);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Smallest monic irreducible of degree `m` over the ring's field, ordering
/// candidates by their coefficient vectors read from the constant term up.
fn smallest_irreducible(ring: &super::PolyRing, m: usize) -> Vec<FqElem> {
    let q = ring.field().size() as u64;
    let total = q.pow(m as u32);
    for idx in 0..total {
        // most significant digit is the constant term
        let mut coeffs = vec![FqElem(0); m + 1];
        let mut x = idx;
        for i in (0..m).rev() {
            coeffs[i] = FqElem((x % q) as u32);
            x /= q;
        }
        coeffs[m] = FqElem(1);
        let f = super::FqPoly::from_coeffs(coeffs.clone());
        if ring.is_irreducible(&f) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Ring for GaloisField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }

    fn one(&self) -> FqElem {
        FqElem(1)
    }

    fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add_e(*a, *b)
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        self.neg_e(*a)
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.mul_e(*a, *b)
    }

    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }

    fn add_mul_assign(&self, acc: &mut FqElem, a: &FqElem, b: &FqElem) {
        *acc = self.add_e(*acc, self.mul_e(*a, *b));
    }
}

impl Field for GaloisField {
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        self.inv_e(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_smallest() {
        assert_eq!(GaloisField::new(4).unwrap().spec().modulus, vec![1, 1, 1]);
        assert_eq!(GaloisField::new(8).unwrap().spec().modulus, vec![1, 0, 1, 1]);
        assert_eq!(GaloisField::new(9).unwrap().spec().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12] {
            assert!(GaloisField::new(q).is_err());
        }
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = GaloisField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add_e(a, f.neg_e(a)), FqElem(0));
                if a.0 != 0 {
                    assert_eq!(f.mul_e(a, f.inv_e(a).unwrap()), FqElem(1));
                }
                for b in f.elements() {
                    for c in f.elements() {
                        let lhs = f.mul_e(a, f.add_e(b, c));
                        let rhs = f.add_e(f.mul_e(a, b), f.mul_e(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn extension_keeps_base_constants() {
        let f3 = GaloisField::new(3).unwrap();
        let big = f3.extension(4).unwrap();
        assert_eq!(big.size(), 81);
        for a in f3.elements() {
            for b in f3.elements() {
                assert_eq!(big.mul_e(a, b), f3.mul_e(a, b));
                assert_eq!(big.add_e(a, b), f3.add_e(a, b));
            }
        }
        let f4 = GaloisField::new(4).unwrap();
        let big = f4.extension(3).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(big.mul_e(a, b), f4.mul_e(a, b));
            }
        }
    }
}
