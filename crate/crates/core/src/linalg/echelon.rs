use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::algebra::Field;
use crate::error::{Error, Result};

/// Reduced row echelon form and its pivot columns.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&r| !f.is_zero(&a[(r, col)])) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = f.inv(&a[(row, col)]).unwrap();
        if !f.is_one(&inv) {
            for j in col..a.cols() {
                a[(row, j)] = f.mul(&a[(row, j)], &inv);
            }
        }
        let pivot_row = a.row(row)[col..].to_vec();
        for r in 0..a.rows() {
            if r == row || f.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = f.neg(&a[(r, col)]);
            for (off, pv) in pivot_row.iter().enumerate() {
                if !f.is_zero(pv) {
                    let mut acc = a[(r, col + off)].clone();
                    f.add_mul_assign(&mut acc, &factor, pv);
                    a[(r, col + off)] = acc;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).1.len()
}

/// A subspace of `K^n`, stored as the nonzero rows of a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, vectors: &[Vec<E>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch("vector length differs from ambient".into()));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = Matrix::from_rows(vectors.to_vec())?;
        let (r, pivots) = rref(f, &m);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let id = Matrix::identity(f, ambient);
        Subspace { ambient, basis: id.row_vecs(), pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            let nc = f.neg(c);
            for (slot, bj) in residual.iter_mut().zip(b) {
                if !f.is_zero(bj) {
                    f.add_mul_assign(slot, &nc, bj);
                }
            }
        }
        residual.iter().all(|x| f.is_zero(x)).then_some(coords)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        v.len() == self.ambient && self.coordinates(f, v).is_some()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(f, b))
    }

    /// Move to another field through an embedding of the scalars that
    /// preserves zero and one (so the echelon shape survives).
    pub fn lift<G: Clone + PartialEq>(&self, embed: impl Fn(&E) -> G) -> Subspace<G> {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.iter().map(|b| b.iter().map(&embed).collect()).collect(),
            pivots: self.pivots.clone(),
        }
    }

    /// Basis of the subspace followed by the unit vectors at non-pivot
    /// positions, as rows of an invertible matrix.
    pub fn base_change<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let mut rows = self.basis.clone();
        for j in (0..self.ambient).filter(|j| !self.pivots.contains(j)) {
            let mut e = vec![f.zero(); self.ambient];
            e[j] = f.one();
            rows.push(e);
        }
        Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::filled(0, 0, f.zero()))
    }
}

pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let (r, pivots) = rref(f, m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let vectors: Vec<Vec<F::Elem>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); n];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&r[(i, fc)]);
            }
            v
        })
        .collect();
    let out = Subspace::span(f, n, &vectors).expect("kernel vectors have ambient length");
    if cfg!(debug_assertions) {
        for v in out.basis() {
            debug_assert!(m.mul_vec(f, v).iter().all(|x| f.is_zero(x)), "kernel vector not annihilated");
        }
    }
    out
}

/// `ker(M - lambda I)`.
pub fn eigenspace<F: Field>(f: &F, m: &Matrix<F::Elem>, lambda: &F::Elem) -> Result<Subspace<F::Elem>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let shifted = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        if i == j { f.sub(&m[(i, j)], lambda) } else { m[(i, j)].clone() }
    });
    Ok(kernel(f, &shifted))
}

/// Intersection through the block echelon form of `[[A, A], [B, 0]]`: rows
/// whose left half vanishes carry the intersection in their right half.
pub fn intersect<F: Field>(
    f: &F,
    a: &Subspace<F::Elem>,
    b: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>> {
    let n = a.ambient();
    if n != b.ambient() {
        return Err(Error::AmbientMismatch(n, b.ambient()));
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Subspace::zero(n));
    }
    let mut rows = Vec::with_capacity(a.dim() + b.dim());
    for v in a.basis() {
        rows.push(v.iter().chain(v.iter()).cloned().collect::<Vec<_>>());
    }
    for v in b.basis() {
        let mut row = v.clone();
        row.extend(std::iter::repeat_n(f.zero(), n));
        rows.push(row);
    }
    let (r, pivots) = rref(f, &Matrix::from_rows(rows)?);
    let vectors: Vec<Vec<F::Elem>> = pivots
        .iter()
        .enumerate()
        .filter(|(_, &p)| p >= n)
        .map(|(i, _)| r.row(i)[n..].to_vec())
        .collect();
    Subspace::span(f, n, &vectors)
}

pub fn sum<F: Field>(f: &F, a: &Subspace<F::Elem>, b: &Subspace<F::Elem>) -> Result<Subspace<F::Elem>> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch(a.ambient(), b.ambient()));
    }
    let vectors: Vec<_> = a.basis().iter().chain(b.basis()).cloned().collect();
    Subspace::span(f, a.ambient(), &vectors)
}

/// Matrix of `u` on an invariant subspace, columns = images of the echelon
/// basis vectors. Every image is checked to have no component outside the
/// subspace.
pub fn restrict_operator<F: Field>(
    f: &F,
    u: &Matrix<F::Elem>,
    s: &Subspace<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    if !u.is_square() {
        return Err(Error::NonSquare { rows: u.rows(), cols: u.cols() });
    }
    if u.rows() != s.ambient() {
        return Err(Error::AmbientMismatch(u.rows(), s.ambient()));
    }
    let d = s.dim();
    let mut out = Matrix::zeros(f, d, d);
    for (j, b) in s.basis().iter().enumerate() {
        let image = u.mul_vec(f, b);
        let coords = s.coordinates(f, &image).ok_or(Error::NotInvariant)?;
        for (i, c) in coords.into_iter().enumerate() {
            out[(i, j)] = c;
        }
    }
    Ok(out)
}
