//! Harmonic cocycles on the apartment determined by their value at the
//! stable chamber: `c(s) = sgn(s) * sum_{g in Stab(s)} g . w`.

use crate::algebra::{FqPoly, GaloisField, PolyRing, RatFunc, RationalFunctionField, Ring};
use crate::building::{enumerate_stabilizer, sgn, simplex_stabilizer, stabilizer_coset_reps, Chamber, Edge, GroupElem};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::representation::action_matrix_untwisted;

/// The representation `V_k` with determinant twist `n`, acting on elements
/// of `GL_3(F_q[t])`.
#[derive(Clone, Debug)]
pub struct RepAction {
    pub ring: PolyRing,
    pub k: usize,
    pub n: i64,
}

impl RepAction {
    pub fn new(field: &GaloisField, k: usize, n: i64) -> Self {
        RepAction { ring: PolyRing::new(field.clone()), k, n }
    }

    /// Action matrix of `g` with polynomial entries.
    pub fn matrix(&self, g: &GroupElem) -> Matrix<FqPoly> {
        let f = self.ring.field();
        let m = action_matrix_untwisted(&self.ring, f.characteristic() as u64, &g.0, self.k);
        let det = g.det(&self.ring).as_constant().expect("unit determinant");
        let e = 1 - self.n;
        let twist = if e >= 0 { f.pow(&det, e as u64) } else { f.pow(&f.inv_e(det).unwrap(), (-e) as u64) };
        if twist.0 == 1 { m } else { m.map(|x| self.ring.scale(x, twist)) }
    }

    pub fn apply(&self, g: &GroupElem, w: &[FqPoly]) -> Vec<FqPoly> {
        self.matrix(g).mul_vec(&self.ring, w)
    }
}

/// `sgn(c) * sum over Stab(c)` as a single matrix.
pub fn stabilizer_sum(act: &RepAction, c: &Chamber) -> Result<Matrix<FqPoly>> {
    let ring = &act.ring;
    let group = enumerate_stabilizer(&simplex_stabilizer(c.vertices())?, ring.field());
    let dim = crate::representation::rep_dim(act.k);
    let mut acc = Matrix::zeros(ring, dim, dim);
    for g in &group {
        acc = acc.add(ring, &act.matrix(g))?;
    }
    Ok(if sgn(c) < 0 { acc.map(|x| ring.neg(x)) } else { acc })
}

/// Value of the cocycle with `c(s_0) = w` at a chamber of the apartment.
pub fn cocycle_value(act: &RepAction, w: &[FqPoly], c: &Chamber) -> Result<Vec<FqPoly>> {
    Ok(stabilizer_sum(act, c)?.mul_vec(&act.ring, w))
}

/// `c(far) + sum_i g_i c(near)` for the chambers on an edge, which vanishes
/// exactly when the cocycle is harmonic there.
pub fn harmonic_defect(act: &RepAction, w: &[FqPoly], e: &Edge) -> Result<Vec<FqPoly>> {
    let ring = &act.ring;
    let cr = stabilizer_coset_reps(e, ring.field())?;
    let mut total = cocycle_value(act, w, &cr.far)?;
    let near = cocycle_value(act, w, &cr.near)?;
    for g in &cr.reps {
        let moved = act.apply(g, &near);
        total = total.iter().zip(&moved).map(|(a, b)| ring.add(a, b)).collect();
    }
    Ok(total)
}

/// The same defect over `F_q(t)`, for callers working with rational vectors.
pub fn harmonic_defect_rational(kf: &RationalFunctionField, act: &RepAction, w: &[RatFunc], e: &Edge) -> Result<Vec<RatFunc>> {
    let ring = kf.poly_ring();
    let den = w.iter().fold(FqPoly::one(), |acc, x| ring.lcm(&acc, x.den()));
    let cleared: Vec<FqPoly> = w.iter().map(|x| ring.mul(x.num(), &ring.divrem(&den, x.den()).0)).collect();
    harmonic_defect(act, &cleared, e)?
        .into_iter()
        .map(|p| kf.normalize(p, den.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{edges_within, stable_chamber, Vertex};

    #[test]
    fn value_at_stable_chamber_is_w() {
        let f = GaloisField::new(3).unwrap();
        let act = RepAction::new(&f, 2, 0);
        let w: Vec<FqPoly> = (0..6).map(|i| FqPoly::monomial(f.elem(1 + i % 2), i as usize)).collect();
        assert_eq!(cocycle_value(&act, &w, &stable_chamber()).unwrap(), w);
    }

    #[test]
    fn four_element_chamber_sum() {
        let f = GaloisField::new(2).unwrap();
        let act = RepAction::new(&f, 1, 0);
        let c = Chamber::new(Vertex::new(0, 0), Vertex::new(1, 0), Vertex::new(1, 1)).unwrap();
        let group = enumerate_stabilizer(&simplex_stabilizer(c.vertices()).unwrap(), &f);
        assert_eq!(group.len(), 4);
        assert_eq!(sgn(&c), 1);
        let w = vec![FqPoly::one(), FqPoly::zero(), FqPoly::t()];
        let mut expected = vec![FqPoly::zero(); 3];
        for g in &group {
            let v = act.apply(g, &w);
            expected = expected.iter().zip(&v).map(|(a, b)| act.ring.add(a, b)).collect();
        }
        assert_eq!(cocycle_value(&act, &w, &c).unwrap(), expected);
    }

    #[test]
    fn harmonic_near_origin() {
        let f = GaloisField::new(2).unwrap();
        let act = RepAction::new(&f, 2, 0);
        let w: Vec<FqPoly> = (0..6).map(|i| FqPoly::monomial(f.one(), i)).collect();
        for e in edges_within(2) {
            assert!(harmonic_defect(&act, &w, &e).unwrap().iter().all(FqPoly::is_zero), "edge {e}");
        }
    }
}
