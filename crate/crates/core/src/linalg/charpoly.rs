//! Exact characteristic polynomials.
//!
//! Over `F_q(t)` the matrix is first cleared of denominators. The resulting
//! polynomial matrix is handled either by division-free Berkowitz over
//! `F_q[t]`, or (for larger sizes) by evaluating `t` at enough points of an
//! extension `F_{q^m}`, running Hessenberg there and interpolating each
//! coefficient back. The degree bound used for the number of points is a
//! rigorous bound on every principal minor, so both paths are exact.

use rayon::prelude::*;

use super::Matrix;
use crate::algebra::{Field, FqElem, FqPoly, GaloisField, PolyRing, RatFunc, RationalFunctionField, Ring};
use crate::error::{Error, Result};

/// Sizes at or below this use Berkowitz directly.
const SMALL: usize = 4;
/// Largest evaluation field we are willing to tabulate.
const MAX_EVAL_FIELD: u64 = 1 << 22;

/// Coefficients `c_0..c_n` of `det(X I - M)` (monic, `c_n = 1`), without
/// divisions.
pub fn berkowitz<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Result<Vec<R::Elem>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    // coefficients from the leading one down
    let mut poly = vec![r.one()];
    for k in 0..n {
        // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{k-1} C
        let mut col = Vec::with_capacity(k + 2);
        col.push(r.one());
        col.push(r.neg(&m[(k, k)]));
        let mut v: Vec<R::Elem> = (0..k).map(|i| m[(i, k)].clone()).collect();
        for step in 0..k {
            let dot = (0..k).fold(r.zero(), |mut acc, i| {
                r.add_mul_assign(&mut acc, &m[(k, i)], &v[i]);
                acc
            });
            col.push(r.neg(&dot));
            if step + 1 < k {
                v = (0..k)
                    .map(|i| {
                        (0..k).fold(r.zero(), |mut acc, l| {
                            r.add_mul_assign(&mut acc, &m[(i, l)], &v[l]);
                            acc
                        })
                    })
                    .collect();
            }
        }
        let mut next = vec![r.zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(k) {
                if i - j < col.len() {
                    r.add_mul_assign(slot, &col[i - j], &poly[j]);
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    Ok(poly)
}

/// Characteristic polynomial over a field through Hessenberg reduction,
/// coefficients lowest first.
pub fn hessenberg<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<Vec<F::Elem>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let target = col + 1;
        let Some(piv) = (target..n).find(|&i| !f.is_zero(&h[(i, col)])) else {
            continue;
        };
        if piv != target {
            h.swap_rows(piv, target);
            for i in 0..n {
                let tmp = h[(i, piv)].clone();
                h[(i, piv)] = h[(i, target)].clone();
                h[(i, target)] = tmp;
            }
        }
        let inv = f.inv(&h[(target, col)]).unwrap();
        for j in target + 1..n {
            if f.is_zero(&h[(j, col)]) {
                continue;
            }
            let u = f.mul(&h[(j, col)], &inv);
            let nu = f.neg(&u);
            for c in 0..n {
                let pv = h[(target, c)].clone();
                if !f.is_zero(&pv) {
                    let mut acc = h[(j, c)].clone();
                    f.add_mul_assign(&mut acc, &nu, &pv);
                    h[(j, c)] = acc;
                }
            }
            for r in 0..n {
                let jv = h[(r, j)].clone();
                if !f.is_zero(&jv) {
                    let mut acc = h[(r, target)].clone();
                    f.add_mul_assign(&mut acc, &u, &jv);
                    h[(r, target)] = acc;
                }
            }
        }
    }
    // p[k] = charpoly of the leading k x k block, coefficients lowest first
    let mut p: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for k in 1..=n {
        let prev = &p[k - 1];
        let mut next = vec![f.zero(); k + 1];
        let diag = f.neg(&h[(k - 1, k - 1)]);
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], c);
            f.add_mul_assign(&mut next[i], &diag, c);
        }
        let mut prod = f.one();
        for i in 1..k {
            prod = f.mul(&prod, &h[(k - i, k - i - 1)]);
            if f.is_zero(&prod) {
                break;
            }
            let coef = f.neg(&f.mul(&h[(k - i - 1, k - 1)], &prod));
            if f.is_zero(&coef) {
                continue;
            }
            for (idx, c) in p[k - i - 1].iter().enumerate() {
                f.add_mul_assign(&mut next[idx], &coef, c);
            }
        }
        p.push(next);
    }
    Ok(p.pop().unwrap())
}

/// Upper bound on the degree of any coefficient of the characteristic
/// polynomial of a polynomial matrix.
fn degree_bound(m: &Matrix<FqPoly>) -> usize {
    let n = m.rows();
    let deg = |p: &FqPoly| p.degree().unwrap_or(0);
    let rows: usize = (0..n).map(|i| m.row(i).iter().map(deg).max().unwrap_or(0)).sum();
    let cols: usize = (0..n).map(|j| (0..n).map(|i| deg(&m[(i, j)])).max().unwrap_or(0)).sum();
    rows.min(cols)
}

/// Characteristic polynomial of a matrix over `F_q[t]`.
pub fn charpoly_poly(ring: &PolyRing, m: &Matrix<FqPoly>) -> Result<Vec<FqPoly>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n <= SMALL {
        return berkowitz(ring, m);
    }
    let points = degree_bound(m) + 1;
    let base = ring.field();
    let q = base.size() as u64;
    let mut ext_deg = 1u32;
    while q.pow(ext_deg) < points as u64 {
        ext_deg += 1;
    }
    if q.pow(ext_deg) > MAX_EVAL_FIELD {
        return berkowitz(ring, m);
    }
    let ext = base.extension(ext_deg)?;
    charpoly_by_interpolation(ring, &ext, m, points)
}

fn charpoly_by_interpolation(
    ring: &PolyRing,
    ext: &GaloisField,
    m: &Matrix<FqPoly>,
    points: usize,
) -> Result<Vec<FqPoly>> {
    let n = m.rows();
    let xs: Vec<FqElem> = (0..points as u32).map(FqElem).collect();
    let values: Vec<Vec<FqElem>> = xs
        .par_iter()
        .map(|&x| {
            let at = m.map(|p| ring.eval_in(p, ext, x));
            hessenberg(ext, &at).expect("square")
        })
        .collect();
    let q = ring.field().size();
    (0..=n)
        .map(|j| {
            let ys: Vec<FqElem> = values.iter().map(|v| v[j]).collect();
            let coeffs = interpolate(ext, &xs, &ys);
            if coeffs.iter().any(|c| c.0 >= q) {
                return Err(Error::InterpolationFailed);
            }
            Ok(FqPoly::from_coeffs(coeffs))
        })
        .collect()
}

/// Newton interpolation; coefficients lowest first.
fn interpolate(f: &GaloisField, xs: &[FqElem], ys: &[FqElem]) -> Vec<FqElem> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = f.add_e(dd[i], f.neg_e(dd[i - 1]));
            let den = f.add_e(xs[i], f.neg_e(xs[i - level]));
            dd[i] = f.mul_e(num, f.inv_e(den).expect("distinct nodes"));
        }
    }
    let mut poly = vec![FqElem(0); n];
    let mut len = 0;
    for i in (0..n).rev() {
        // poly = poly * (X - x_i) + dd[i]
        let nx = f.neg_e(xs[i]);
        let mut next = vec![FqElem(0); len + 1];
        for k in 0..len {
            next[k + 1] = f.add_e(next[k + 1], poly[k]);
            next[k] = f.add_e(next[k], f.mul_e(nx, poly[k]));
        }
        next[0] = f.add_e(next[0], dd[i]);
        len += 1;
        poly[..len].copy_from_slice(&next);
    }
    poly
}

/// Exact `det(X I - M)` over `F_q(t)`, coefficients `c_0..c_n`.
pub fn charpoly(kf: &RationalFunctionField, m: &Matrix<RatFunc>) -> Result<Vec<RatFunc>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let ring = kf.poly_ring();
    let n = m.rows();
    let den = m.entries().iter().fold(FqPoly::one(), |acc, x| {
        if x.den().is_one() { acc } else { ring.lcm(&acc, x.den()) }
    });
    let cleared = m.map(|x| {
        if den.is_one() {
            x.num().clone()
        } else {
            ring.mul(x.num(), &ring.divrem(&den, x.den()).0)
        }
    });
    let coeffs = charpoly_poly(ring, &cleared)?;
    coeffs
        .into_iter()
        .enumerate()
        .map(|(j, c)| kf.normalize(c, ring.pow(&den, (n - j) as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::det_cofactor;

    fn p(c: &[u32]) -> FqPoly {
        FqPoly::from_coeffs(c.iter().map(|&x| FqElem(x)).collect())
    }

    #[test]
    fn companion_matrix() {
        // X^3 + tX + 1 over F_2
        let kf = RationalFunctionField::new(GaloisField::new(2).unwrap());
        let (z, o) = (RatFunc::zero(), RatFunc::one());
        let t = kf.t();
        let m = Matrix::from_rows(vec![
            vec![z.clone(), z.clone(), kf.neg(&o)],
            vec![o.clone(), z.clone(), kf.neg(&t)],
            vec![z.clone(), o.clone(), z.clone()],
        ])
        .unwrap();
        let c = charpoly(&kf, &m).unwrap();
        assert_eq!(c, vec![o.clone(), t, z, o]);
    }

    #[test]
    fn paths_agree_with_cofactor_expansion() {
        let ring = PolyRing::new(GaloisField::new(3).unwrap());
        let m = Matrix::from_fn(6, 6, |i, j| p(&[((i * 7 + j * 5) % 3) as u32, ((i + 2 * j) % 3) as u32, (i * j % 3) as u32]));
        let b = berkowitz(&ring, &m).unwrap();
        let e = charpoly_poly(&ring, &m).unwrap();
        assert_eq!(b, e);
        // constant coefficient is (-1)^n det M
        let det = det_cofactor(&ring, &m);
        assert_eq!(b[0], det);
        assert_eq!(b[6], FqPoly::one());
    }
}
