//! Small fixed-size 3x3 matrices over a ring context.

use crate::algebra::{Field, Ring};

pub type Mat3<E> = [[E; 3]; 3];

pub fn from_fn<E>(mut f: impl FnMut(usize, usize) -> E) -> Mat3<E> {
    std::array::from_fn(|i| std::array::from_fn(|j| f(i, j)))
}

pub fn identity<R: Ring>(r: &R) -> Mat3<R::Elem> {
    from_fn(|i, j| if i == j { r.one() } else { r.zero() })
}

pub fn diag<E: Clone>(zero: &E, d: [E; 3]) -> Mat3<E> {
    from_fn(|i, j| if i == j { d[i].clone() } else { zero.clone() })
}

pub fn mul<R: Ring>(r: &R, a: &Mat3<R::Elem>, b: &Mat3<R::Elem>) -> Mat3<R::Elem> {
    from_fn(|i, j| {
        let mut acc = r.zero();
        for l in 0..3 {
            r.add_mul_assign(&mut acc, &a[i][l], &b[l][j]);
        }
        acc
    })
}

pub fn det<R: Ring>(r: &R, m: &Mat3<R::Elem>) -> R::Elem {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        r.sub(&r.mul(&m[1][a], &m[2][b]), &r.mul(&m[1][c], &m[2][d]))
    };
    let t0 = r.mul(&m[0][0], &minor(1, 2, 2, 1));
    let t1 = r.mul(&m[0][1], &minor(0, 2, 2, 0));
    let t2 = r.mul(&m[0][2], &minor(0, 1, 1, 0));
    r.add(&r.sub(&t0, &t1), &t2)
}

/// Adjugate: `m * adj(m) = det(m) I`.
pub fn adjugate<R: Ring>(r: &R, m: &Mat3<R::Elem>) -> Mat3<R::Elem> {
    from_fn(|i, j| {
        // cofactor of entry (j, i)
        let rows: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let cols: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let d = r.sub(
            &r.mul(&m[rows[0]][cols[0]], &m[rows[1]][cols[1]]),
            &r.mul(&m[rows[0]][cols[1]], &m[rows[1]][cols[0]]),
        );
        if (i + j) % 2 == 0 { d } else { r.neg(&d) }
    })
}

pub fn inverse<F: Field>(f: &F, m: &Mat3<F::Elem>) -> Option<Mat3<F::Elem>> {
    let d = f.inv(&det(f, m))?;
    let adj = adjugate(f, m);
    Some(from_fn(|i, j| f.mul(&adj[i][j], &d)))
}

pub fn transpose<E: Clone>(m: &Mat3<E>) -> Mat3<E> {
    from_fn(|i, j| m[j][i].clone())
}

pub fn map<E, G>(m: &Mat3<E>, f: impl Fn(&E) -> G) -> Mat3<G> {
    from_fn(|i, j| f(&m[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaloisField;

    #[test]
    fn adjugate_identity() {
        let f = GaloisField::new(5).unwrap();
        let m = from_fn(|i, j| f.elem(((i * 3 + j * j + 1) % 5) as u32));
        let prod = mul(&f, &m, &adjugate(&f, &m));
        let d = det(&f, &m);
        assert_eq!(prod, diag(&f.zero(), [d, d, d]));
    }
}
