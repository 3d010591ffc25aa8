//! Slow reference implementations used to cross-check the main code paths.
//! Each one takes a different route to the same answer.

use std::collections::HashMap;

use crate::algebra::Ring;
use crate::linalg::Matrix;
use crate::mat3::Mat3;
use crate::representation::basis_indices;

/// Determinant by Laplace expansion along the first row.
pub fn det_cofactor<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows();
    assert!(m.is_square());
    if n == 0 {
        return r.one();
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = r.zero();
    for j in 0..n {
        if r.is_zero(&m[(0, j)]) {
            continue;
        }
        let minor = Matrix::from_fn(n - 1, n - 1, |a, b| m[(a + 1, if b < j { b } else { b + 1 })].clone());
        let term = r.mul(&m[(0, j)], &det_cofactor(r, &minor));
        acc = if j % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
    }
    acc
}

type Trivariate<E> = HashMap<[usize; 3], E>;

fn tri_mul<R: Ring>(r: &R, a: &Trivariate<R::Elem>, b: &Trivariate<R::Elem>) -> Trivariate<R::Elem> {
    let mut out: Trivariate<R::Elem> = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let slot = out.entry(e).or_insert_with(|| r.zero());
            *slot = r.add(slot, &r.mul(ca, cb));
        }
    }
    out.retain(|_, c| !r.is_zero(c));
    out
}

/// Untwisted action matrix by literally substituting `(X, Y, Z) -> g (X, Y, Z)`
/// into every basis monomial and expanding by repeated multiplication. The
/// dual vector `v_{lam,mu}` is sent to the functional reading off the
/// `X^lam Y^mu` coefficient after substitution.
pub fn naive_action_matrix<R: Ring>(r: &R, g: &Mat3<R::Elem>, k: usize) -> Matrix<R::Elem> {
    let forms: Vec<Trivariate<R::Elem>> = (0..3)
        .map(|row| {
            (0..3)
                .filter(|&c| !r.is_zero(&g[row][c]))
                .map(|c| {
                    let mut e = [0; 3];
                    e[c] = 1;
                    (e, g[row][c].clone())
                })
                .collect()
        })
        .collect();
    let idx = basis_indices(k);
    let mut out = Matrix::zeros(r, idx.len(), idx.len());
    for (col, &(l, m)) in idx.iter().enumerate() {
        let mut poly: Trivariate<R::Elem> = HashMap::from([([0, 0, 0], r.one())]);
        for (form, times) in forms.iter().zip([l, m, k - l - m]) {
            for _ in 0..times {
                poly = tri_mul(r, &poly, form);
            }
        }
        for (row, &(lam, mu)) in idx.iter().enumerate() {
            if let Some(c) = poly.get(&[lam, mu, k - lam - mu]) {
                out[(col, row)] = c.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaloisField;
    use crate::representation::action_matrix_untwisted;

    #[test]
    fn naive_matches_multinomial_route() {
        for q in [2u32, 3, 4] {
            let f = GaloisField::new(q).unwrap();
            let g = crate::mat3::from_fn(|i, j| f.elem(((i * 5 + j * 3 + 1) as u32) % q));
            for k in 0..5 {
                let p = f.characteristic() as u64;
                assert_eq!(naive_action_matrix(&f, &g, k), action_matrix_untwisted(&f, p, &g, k));
            }
        }
    }
}
