//! Vertices and chambers as classes of matrices over `F_q(t)`.

use super::{Chamber, GroupElem, Vertex};
use crate::algebra::{FqPoly, PolyRing, RatFunc, RationalFunctionField, Valuation};
use crate::mat3::{self, Mat3};

fn lift(m: &Mat3<FqPoly>) -> Mat3<RatFunc> {
    mat3::map(m, |p| RatFunc::from_poly(p.clone()))
}

/// `diag(1, pi^j, pi^k)`.
pub fn vertex_matrix(kf: &RationalFunctionField, v: &Vertex) -> Mat3<RatFunc> {
    mat3::diag(&RatFunc::zero(), [RatFunc::one(), kf.t_pow(-v.j), kf.t_pow(-v.k)])
}

/// The vertex classes `[g], [g diag(1,1,pi)], [g diag(1,pi,pi)]`.
pub fn chamber_from_matrix(kf: &RationalFunctionField, g: &Mat3<RatFunc>) -> [Mat3<RatFunc>; 3] {
    let (one, pi, zero) = (RatFunc::one(), kf.pi(), RatFunc::zero());
    let d1 = mat3::diag(&zero, [one.clone(), one.clone(), pi.clone()]);
    let d2 = mat3::diag(&zero, [one, pi.clone(), pi]);
    [g.clone(), mat3::mul(kf, g, &d1), mat3::mul(kf, g, &d2)]
}

/// Whether `g1 O^3` and `g2 O^3` are homothetic lattices over the ring of
/// integers at infinity.
pub fn vertex_class_equal(kf: &RationalFunctionField, g1: &Mat3<RatFunc>, g2: &Mat3<RatFunc>) -> bool {
    let Some(inv) = mat3::inverse(kf, g1) else {
        return false;
    };
    let h = mat3::mul(kf, &inv, g2);
    let Some(v0) = h.iter().flatten().map(|x| x.inf_valuation()).min().and_then(Valuation::finite) else {
        return false;
    };
    mat3::det(kf, &h).inf_valuation() == Valuation::Finite(3 * v0)
}

/// Unordered comparison of two triples of vertex classes.
pub fn chamber_class_equal(kf: &RationalFunctionField, a: &[Mat3<RatFunc>; 3], b: &[Mat3<RatFunc>; 3]) -> bool {
    let mut used = [false; 3];
    a.iter().all(|x| {
        (0..3).any(|j| {
            if !used[j] && vertex_class_equal(kf, x, &b[j]) {
                used[j] = true;
                true
            } else {
                false
            }
        })
    })
}

/// Vertex classes of `gamma * c`.
pub fn act_on_chamber(kf: &RationalFunctionField, gamma: &GroupElem, c: &Chamber) -> [Mat3<RatFunc>; 3] {
    let g = lift(&gamma.0);
    c.vertices().map(|v| mat3::mul(kf, &g, &vertex_matrix(kf, &v)))
}

/// Membership in `Gamma_1(t)`: determinant one and upper unipotent mod `t`.
pub fn in_gamma1(ring: &PolyRing, g: &GroupElem) -> bool {
    if !g.det(ring).is_one() {
        return false;
    }
    (0..3).all(|i| {
        (0..3).all(|j| {
            let c0 = g.0[i][j].coeff(0).0;
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => c0 == 1,
                std::cmp::Ordering::Greater => c0 == 0,
                std::cmp::Ordering::Less => true,
            }
        })
    })
}

/// A matrix whose chamber is the stable chamber.
pub fn stable_chamber_matrix() -> Mat3<FqPoly> {
    let (z, o) = (FqPoly::zero(), FqPoly::one());
    [[z.clone(), o.clone(), z.clone()], [o, z.clone(), z.clone()], [z.clone(), z, FqPoly::t()]]
}

/// Checks `eps * s_0 = gamma * target` with `gamma` in `Gamma_1(t)`.
pub fn verify_reduction(kf: &RationalFunctionField, eps: &Mat3<FqPoly>, gamma: &GroupElem, target: &Chamber) -> bool {
    if !in_gamma1(kf.poly_ring(), gamma) {
        return false;
    }
    let lhs = chamber_from_matrix(kf, &mat3::mul(kf, &lift(eps), &lift(&stable_chamber_matrix())));
    let rhs = act_on_chamber(kf, gamma, target);
    chamber_class_equal(kf, &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FqElem, GaloisField, Ring};
    use crate::building::stable_chamber;

    fn kf(q: u32) -> RationalFunctionField {
        RationalFunctionField::new(GaloisField::new(q).unwrap())
    }

    fn classes(k: &RationalFunctionField, c: &Chamber) -> [Mat3<RatFunc>; 3] {
        c.vertices().map(|v| vertex_matrix(k, &v))
    }

    #[test]
    fn stable_matrix_gives_stable_chamber() {
        let k = kf(2);
        let got = chamber_from_matrix(&k, &lift(&stable_chamber_matrix()));
        assert!(chamber_class_equal(&k, &got, &classes(&k, &stable_chamber())));
    }

    #[test]
    fn identity_gives_standard_chamber() {
        let k = kf(3);
        let got = chamber_from_matrix(&k, &mat3::identity(&k));
        let c = Chamber::new(Vertex::new(0, 0), Vertex::new(0, 1), Vertex::new(1, 1)).unwrap();
        assert!(chamber_class_equal(&k, &got, &classes(&k, &c)));
        assert!(!vertex_class_equal(&k, &got[0], &got[1]));
    }

    #[test]
    fn homothety_is_ignored() {
        let k = kf(5);
        let g = mat3::from_fn(|i, j| RatFunc::constant(FqElem(if i == j { 1 } else if i < j { ((i + 2 * j) % 5) as u32 } else { 0 })));
        let scaled = mat3::map(&g, |x| k.mul(x, &k.t_pow(3)));
        assert!(vertex_class_equal(&k, &g, &scaled));
    }
}
