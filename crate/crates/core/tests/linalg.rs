use cocycle_core::algebra::{PolyRing, Ring};
use cocycle_core::linalg::{berkowitz, charpoly, charpoly_poly, eigenspace, kernel};
use cocycle_core::oracle::det_cofactor;
use cocycle_core::{FqElem, FqPoly, GaloisField, Matrix, RatFunc, RationalFunctionField};
use proptest::prelude::*;

fn entry(kf: &RationalFunctionField, num: &[u32], den_kind: u8) -> RatFunc {
    let f = kf.base();
    let n = FqPoly::from_coeffs(num.iter().map(|&c| f.elem(c % f.size())).collect());
    let d = match den_kind % 3 {
        0 => FqPoly::one(),
        1 => FqPoly::t(),
        _ => FqPoly::from_coeffs(vec![f.one(), f.one()]),
    };
    kf.normalize(n, d).unwrap()
}

fn matrix_strategy(max_n: usize) -> impl Strategy<Value = (u32, usize, Vec<(Vec<u32>, u8)>)> {
    (prop::sample::select(vec![2u32, 3]), 1..=max_n).prop_flat_map(|(q, n)| {
        (Just(q), Just(n), prop::collection::vec((prop::collection::vec(0..q, 0..3), 0u8..3), n * n))
    })
}

fn build(kf: &RationalFunctionField, n: usize, raw: &[(Vec<u32>, u8)]) -> Matrix<RatFunc> {
    Matrix::from_fn(n, n, |i, j| {
        let (num, d) = &raw[i * n + j];
        entry(kf, num, *d)
    })
}

/// `t -> alpha` for a field element that kills no denominator used above.
fn specialize(ring: &PolyRing, big: &GaloisField, alpha: FqElem, x: &RatFunc) -> FqElem {
    let n = ring.eval_in(x.num(), big, alpha);
    let d = ring.eval_in(x.den(), big, alpha);
    big.mul_e(n, big.inv_e(d).expect("denominator survives"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn charpoly_commutes_with_specialization((q, n, raw) in matrix_strategy(5), pick in 0u32..1000) {
        let f = GaloisField::new(q).unwrap();
        let kf = RationalFunctionField::new(f.clone());
        let ring = kf.poly_ring();
        let m = build(&kf, n, &raw);
        let cp = charpoly(&kf, &m).unwrap();
        let big = f.extension(5).unwrap();
        // anything outside F_q avoids the roots of t and 1 + t
        let alpha = big.elem(q + pick % (big.size() - q));
        let spec = m.map(|x| specialize(ring, &big, alpha, x));
        for xi in 0..=(n as u32 + 1) {
            let x = big.elem(xi * 7 % big.size());
            let shifted = Matrix::from_fn(n, n, |i, j| {
                let e = big.neg(&spec[(i, j)]);
                if i == j { big.add(&e, &x) } else { e }
            });
            let direct = det_cofactor(&big, &shifted);
            let via = cp.iter().rev().fold(big.zero(), |acc, c| big.add(&big.mul(&acc, &x), &specialize(ring, &big, alpha, c)));
            prop_assert_eq!(direct, via);
        }
    }

    #[test]
    fn charpoly_is_a_similarity_invariant((q, n, raw) in matrix_strategy(4), ops in prop::collection::vec((0usize..4, 0usize..4, prop::collection::vec(0u32..3, 1..3), 0u8..3), 1..5)) {
        let f = GaloisField::new(q).unwrap();
        let kf = RationalFunctionField::new(f.clone());
        let mut m = build(&kf, n, &raw);
        for (a, b, num, d) in ops {
            let (a, b) = (a % n, b % n);
            if a == b {
                continue;
            }
            let c = entry(&kf, &num, d);
            // E = I + c e_ab; M -> E M E^{-1}
            let e = Matrix::from_fn(n, n, |i, j| if i == j { kf.one() } else if (i, j) == (a, b) { c.clone() } else { kf.zero() });
            let ei = Matrix::from_fn(n, n, |i, j| if i == j { kf.one() } else if (i, j) == (a, b) { kf.neg(&c) } else { kf.zero() });
            let before = charpoly(&kf, &m).unwrap();
            m = e.mul(&kf, &m).unwrap().mul(&kf, &ei).unwrap();
            prop_assert_eq!(charpoly(&kf, &m).unwrap(), before);
        }
    }

    #[test]
    fn constant_term_is_signed_determinant((q, n, raw) in matrix_strategy(5)) {
        let kf = RationalFunctionField::new(GaloisField::new(q).unwrap());
        let m = build(&kf, n, &raw);
        let cp = charpoly(&kf, &m).unwrap();
        let det = det_cofactor(&kf, &m);
        let signed = if n % 2 == 0 { det } else { kf.neg(&det) };
        prop_assert_eq!(&cp[0], &signed);
        prop_assert_eq!(&cp[n], &RatFunc::one());
    }

    #[test]
    fn polynomial_paths_agree(q in prop::sample::select(vec![2u32, 3, 5]), n in 1usize..8, seed in prop::collection::vec(0u32..5, 64)) {
        let f = GaloisField::new(q).unwrap();
        let ring = PolyRing::new(f.clone());
        let m = Matrix::from_fn(n, n, |i, j| {
            let s = &seed[(i * n + j) % seed.len()..];
            FqPoly::from_coeffs(s.iter().take(1 + (i + j) % 3).map(|&c| f.elem(c % q)).collect())
        });
        prop_assert_eq!(charpoly_poly(&ring, &m).unwrap(), berkowitz(&ring, &m).unwrap());
    }

    #[test]
    fn kernels_and_eigenspaces_annihilate((q, n, raw) in matrix_strategy(4)) {
        let kf = RationalFunctionField::new(GaloisField::new(q).unwrap());
        let m = build(&kf, n, &raw);
        for v in kernel(&kf, &m).basis() {
            prop_assert!(m.mul_vec(&kf, v).iter().all(RatFunc::is_zero));
        }
        let lambda = kf.t();
        for v in eigenspace(&kf, &m, &lambda).unwrap().basis() {
            let mv = m.mul_vec(&kf, v);
            prop_assert!(mv.iter().zip(v).all(|(a, b)| *a == kf.mul(&lambda, b)));
        }
    }
}
