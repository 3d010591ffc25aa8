//! The rational function field `F_q(t)` and its two relevant valuations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FqElem, FqPoly, Field, GaloisField, PolyRing, Ring};
use crate::error::{Error, Result};

/// Canonical form: `gcd(num, den) = 1`, `den` monic, zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

/// A discrete valuation value; `Infinite` only for zero and sorts last.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: FqPoly::zero(), den: FqPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: FqPoly::one(), den: FqPoly::one() }
    }

    pub fn from_poly(p: FqPoly) -> Self {
        RatFunc { num: p, den: FqPoly::one() }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::from_poly(FqPoly::constant(c))
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&FqPoly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<FqElem> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    /// Valuation at `t = 0`.
    pub fn t_valuation(&self) -> Valuation {
        match (self.num.t_adic_order(), self.den.t_adic_order()) {
            (Some(a), Some(b)) => Valuation::Finite(a as i64 - b as i64),
            _ => Valuation::Infinite,
        }
    }

    /// Valuation at infinity, `deg den - deg num`; `v(t) = -1`.
    pub fn inf_valuation(&self) -> Valuation {
        match (self.num.degree(), self.den.degree()) {
            (Some(a), Some(b)) => Valuation::Finite(b as i64 - a as i64),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for RatFunc {
    /// `num/den`, parenthesising multi-term parts; just `num` over 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == FqPoly::one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &FqPoly| {
            let s = p.to_string();
            if s.contains('+') { format!("({s})") } else { s }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// `F_q(t)` as a field context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionField {
    ring: PolyRing,
}

impl RationalFunctionField {
    pub fn new(field: GaloisField) -> Self {
        RationalFunctionField { ring: PolyRing::new(field) }
    }

    pub fn poly_ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn base(&self) -> &GaloisField {
        self.ring.field()
    }

    /// Bring `num/den` to canonical form.
    pub fn normalize(&self, num: FqPoly, den: FqPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let r = &self.ring;
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = r.gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (r.divrem(&num, &g).0, r.divrem(&den, &g).0)
            }
        };
        let lc = den.leading().unwrap();
        if lc.0 == 1 {
            return Ok(RatFunc { num, den });
        }
        let inv = self.base().inv_e(lc).unwrap();
        Ok(RatFunc { num: r.scale(&num, inv), den: r.scale(&den, inv) })
    }

    fn make(&self, num: FqPoly, den: FqPoly) -> RatFunc {
        self.normalize(num, den).expect("nonzero denominator")
    }

    /// The variable `t`.
    pub fn t(&self) -> RatFunc {
        RatFunc::from_poly(FqPoly::t())
    }

    /// `t^e` for any integer `e`.
    pub fn t_pow(&self, e: i64) -> RatFunc {
        if e >= 0 {
            RatFunc::from_poly(FqPoly::monomial(FqElem(1), e as usize))
        } else {
            RatFunc { num: FqPoly::one(), den: FqPoly::monomial(FqElem(1), (-e) as usize) }
        }
    }

    /// Uniformiser at infinity, `1/t`.
    pub fn pi(&self) -> RatFunc {
        self.t_pow(-1)
    }
}

impl Ring for RationalFunctionField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }

    fn one(&self) -> RatFunc {
        RatFunc::one()
    }

    fn from_int(&self, n: i64) -> RatFunc {
        RatFunc::constant(self.base().from_int(n))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = r.add(&a.num, &b.num);
            if a.den.is_one() {
                return RatFunc { num, den: a.den.clone() };
            }
            return self.make(num, a.den.clone());
        }
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.make(num, r.mul(&a.den, &b.den))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: self.ring.neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.is_zero() || b.is_zero() {
            return RatFunc::zero();
        }
        if a.den.is_one() && b.den.is_one() {
            return RatFunc { num: r.mul(&a.num, &b.num), den: FqPoly::one() };
        }
        self.make(r.mul(&a.num, &b.num), r.mul(&a.den, &b.den))
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
}

impl Field for RationalFunctionField {
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.is_zero() {
            return None;
        }
        Some(self.make(a.den.clone(), a.num.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u32) -> RationalFunctionField {
        RationalFunctionField::new(GaloisField::new(q).unwrap())
    }

    fn p(c: &[u32]) -> FqPoly {
        FqPoly::from_coeffs(c.iter().map(|&x| FqElem(x)).collect())
    }

    #[test]
    fn normalizes() {
        let k = field(2);
        let r = k.normalize(p(&[0, 1, 1]), p(&[0, 1])).unwrap();
        assert_eq!(r, RatFunc::from_poly(p(&[1, 1])));
        assert_eq!(r.to_string(), "1+t");
        assert!(matches!(k.normalize(p(&[1]), FqPoly::zero()), Err(Error::ZeroDenominator)));
        let z = k.normalize(FqPoly::zero(), p(&[1, 1])).unwrap();
        assert_eq!(z, RatFunc::zero());
    }

    #[test]
    fn valuations() {
        let k = field(3);
        let x = k.normalize(p(&[0, 0, 1]), p(&[0, 1, 1])).unwrap(); // t^2/(t+t^2)
        assert_eq!(x.t_valuation(), Valuation::Finite(1));
        assert_eq!(k.t().inf_valuation(), Valuation::Finite(-1));
        assert_eq!(k.pi().inf_valuation(), Valuation::Finite(1));
        assert_eq!(RatFunc::zero().t_valuation(), Valuation::Infinite);
    }

    #[test]
    fn monic_denominator() {
        let k = field(5);
        let x = k.normalize(p(&[1]), p(&[0, 2])).unwrap();
        assert_eq!(x.den(), &p(&[0, 1]));
        assert_eq!(x.num(), &p(&[3]));
    }
}
