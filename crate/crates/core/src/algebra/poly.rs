//! Dense univariate polynomials over a finite field.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FqElem, GaloisField, Ring};

/// Coefficients lowest degree first, never with trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqPoly(Vec<FqElem>);

impl FqPoly {
    pub fn zero() -> Self {
        FqPoly(Vec::new())
    }

    pub fn one() -> Self {
        FqPoly(vec![FqElem(1)])
    }

    pub fn constant(c: FqElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^d`.
    pub fn monomial(c: FqElem, d: usize) -> Self {
        let mut v = vec![FqElem(0); d + 1];
        v[d] = c;
        Self::from_coeffs(v)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(FqElem(1), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.0 == 0) {
            coeffs.pop();
        }
        FqPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].0 == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.0.last().copied()
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.0.get(i).copied().unwrap_or(FqElem(0))
    }

    /// Constant term's value when the polynomial has degree at most 0.
    pub fn as_constant(&self) -> Option<FqElem> {
        match self.0.len() {
            0 => Some(FqElem(0)),
            1 => Some(self.0[0]),
            _ => None,
        }
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn t_adic_order(&self) -> Option<usize> {
        self.0.iter().position(|c| c.0 != 0)
    }

    /// Multiply by `t^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FqElem(0); d];
        v.extend_from_slice(&self.0);
        FqPoly(v)
    }
}

impl fmt::Display for FqPoly {
    /// Ascending monomials, e.g. `1+t^2` or `2t+t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.0 == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "t")?,
                (1, v) => write!(f, "{v}t")?,
                (d, 1) => write!(f, "t^{d}")?,
                (d, v) => write!(f, "{v}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// `F_q[t]` as a ring context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: GaloisField,
}

impl PolyRing {
    pub fn new(field: GaloisField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn scale(&self, a: &FqPoly, c: FqElem) -> FqPoly {
        if c.0 == 0 {
            return FqPoly::zero();
        }
        FqPoly::from_coeffs(a.0.iter().map(|x| self.field.mul_e(*x, c)).collect())
    }

    pub fn monic(&self, a: &FqPoly) -> FqPoly {
        match a.leading() {
            None => a.clone(),
            Some(lc) if lc.0 == 1 => a.clone(),
            Some(lc) => self.scale(a, self.field.inv_e(lc).unwrap()),
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        let f = &self.field;
        let lc_inv = f.inv_e(b.leading().unwrap()).unwrap();
        let mut rem = a.0.clone();
        if rem.len() < b.0.len() {
            return (FqPoly::zero(), a.clone());
        }
        let mut quot = vec![FqElem(0); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c.0 == 0 {
                continue;
            }
            let factor = f.mul_e(c, lc_inv);
            quot[i - db] = factor;
            let nf = f.neg_e(factor);
            for (j, bj) in b.0.iter().enumerate() {
                let idx = i - db + j;
                rem[idx] = f.add_e(rem[idx], f.mul_e(nf, *bj));
            }
        }
        rem.truncate(db);
        (FqPoly::from_coeffs(quot), FqPoly::from_coeffs(rem))
    }

    pub fn rem(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.divrem(a, b).1
    }

    /// Exact division; `None` when `b` does not divide `a`.
    pub fn div_exact(&self, a: &FqPoly, b: &FqPoly) -> Option<FqPoly> {
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn lcm(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let g = self.gcd(a, b);
        self.monic(&self.mul(&self.divrem(a, &g).0, b))
    }

    /// Trial division by every monic polynomial of degree at most half.
    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        let n = match f.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let q = self.field.size() as u64;
        for d in 1..=n / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut c = vec![FqElem(0); d + 1];
                let mut x = idx;
                for slot in c.iter_mut().take(d) {
                    *slot = FqElem((x % q) as u32);
                    x /= q;
                }
                c[d] = FqElem(1);
                if self.rem(f, &FqPoly(c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluate at a point of a field containing the coefficient field with
    /// compatible encoding (the field itself or an extension built on it).
    pub fn eval_in(&self, a: &FqPoly, big: &GaloisField, x: FqElem) -> FqElem {
        a.0.iter().rev().fold(FqElem(0), |acc, c| big.add_e(big.mul_e(acc, x), *c))
    }
}

impl Ring for PolyRing {
    type Elem = FqPoly;

    fn zero(&self) -> FqPoly {
        FqPoly::zero()
    }

    fn one(&self) -> FqPoly {
        FqPoly::one()
    }

    fn from_int(&self, n: i64) -> FqPoly {
        FqPoly::constant(self.field.from_int(n))
    }

    fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (long, short) = if a.0.len() >= b.0.len() { (a, b) } else { (b, a) };
        let mut v = long.0.clone();
        for (slot, c) in v.iter_mut().zip(short.0.iter()) {
            *slot = self.field.add_e(*slot, *c);
        }
        FqPoly::from_coeffs(v)
    }

    fn neg(&self, a: &FqPoly) -> FqPoly {
        FqPoly(a.0.iter().map(|c| self.field.neg_e(*c)).collect())
    }

    fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let f = &self.field;
        let mut v = vec![FqElem(0); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                v[i + j] = f.add_e(v[i + j], f.mul_e(*x, *y));
            }
        }
        FqPoly::from_coeffs(v)
    }

    fn is_zero(&self, a: &FqPoly) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u32) -> PolyRing {
        PolyRing::new(GaloisField::new(q).unwrap())
    }

    fn p(c: &[u32]) -> FqPoly {
        FqPoly::from_coeffs(c.iter().map(|&x| FqElem(x)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let r = ring(3);
        let a = p(&[1, 2, 0, 1, 2]);
        let b = p(&[2, 1, 1]);
        let (q, rem) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic() {
        let r = ring(5);
        let x = p(&[1, 1]);
        let a = r.mul(&x, &p(&[3, 0, 2]));
        let b = r.mul(&r.scale(&x, FqElem(3)), &p(&[1, 2]));
        assert_eq!(r.gcd(&a, &b), x);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "1+t^2");
        assert_eq!(p(&[0, 2, 0, 1]).to_string(), "2t+t^3");
        assert_eq!(FqPoly::zero().to_string(), "0");
    }

    #[test]
    fn irreducibility() {
        let r = ring(2);
        assert!(r.is_irreducible(&p(&[1, 1, 1])));
        assert!(!r.is_irreducible(&p(&[1, 0, 1])));
        assert!(r.is_irreducible(&p(&[1, 1, 0, 0, 1])));
    }
}
