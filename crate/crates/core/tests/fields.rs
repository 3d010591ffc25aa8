use cocycle_core::algebra::{Field, Ring};
use cocycle_core::{FqPoly, GaloisField, RatFunc, RationalFunctionField, Valuation};
use proptest::prelude::*;

const QS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn elems() -> impl Strategy<Value = (u32, u32, u32, u32)> {
    prop::sample::select(QS.to_vec()).prop_flat_map(|q| (Just(q), 0..q, 0..q, 0..q))
}

fn poly(q: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q, 0..=max_len)
}

fn ratfunc() -> impl Strategy<Value = (u32, [(Vec<u32>, Vec<u32>); 3])> {
    prop::sample::select(vec![2u32, 3, 4]).prop_flat_map(|q| {
        let pair = || (poly(q, 4), poly(q, 3));
        (Just(q), [pair(), pair(), pair()])
    })
}

fn build(kf: &RationalFunctionField, num: &[u32], den: &[u32]) -> RatFunc {
    let f = kf.base();
    let n = FqPoly::from_coeffs(num.iter().map(|&c| f.elem(c)).collect());
    let mut d = FqPoly::from_coeffs(den.iter().map(|&c| f.elem(c)).collect());
    if d.is_zero() {
        d = FqPoly::one();
    }
    kf.normalize(n, d).unwrap()
}

fn val_add(a: Valuation, b: Valuation) -> Valuation {
    match (a, b) {
        (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
        _ => Valuation::Infinite,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn finite_field_axioms((q, a, b, c) in elems()) {
        let f = GaloisField::new(q).unwrap();
        let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
        prop_assert_eq!(f.add(&a, &f.add(&b, &c)), f.add(&f.add(&a, &b), &c));
        prop_assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if let Some(ai) = f.inv(&a) {
            prop_assert_eq!(f.mul(&a, &ai), f.one());
        } else {
            prop_assert!(f.is_zero(&a));
        }
    }

    #[test]
    fn rational_function_axioms((q, [(n1, d1), (n2, d2), (n3, d3)]) in ratfunc()) {
        let kf = RationalFunctionField::new(GaloisField::new(q).unwrap());
        let (a, b, c) = (build(&kf, &n1, &d1), build(&kf, &n2, &d2), build(&kf, &n3, &d3));
        prop_assert_eq!(kf.mul(&a, &kf.add(&b, &c)), kf.add(&kf.mul(&a, &b), &kf.mul(&a, &c)));
        prop_assert_eq!(kf.mul(&a, &kf.mul(&b, &c)), kf.mul(&kf.mul(&a, &b), &c));
        prop_assert_eq!(kf.add(&a, &kf.add(&b, &c)), kf.add(&kf.add(&a, &b), &c));
        if let Some(ai) = kf.inv(&a) {
            prop_assert_eq!(kf.mul(&a, &ai), kf.one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn valuation_laws((q, [(n1, d1), (n2, d2), _]) in ratfunc()) {
        let kf = RationalFunctionField::new(GaloisField::new(q).unwrap());
        let (a, b) = (build(&kf, &n1, &d1), build(&kf, &n2, &d2));
        let prod = kf.mul(&a, &b);
        let sum = kf.add(&a, &b);
        for v in [RatFunc::t_valuation, RatFunc::inf_valuation] {
            prop_assert_eq!(v(&prod), val_add(v(&a), v(&b)));
            prop_assert!(v(&sum) >= v(&a).min(v(&b)));
        }
    }

    #[test]
    fn normalizing_is_idempotent((q, [(n1, d1), _, _]) in ratfunc()) {
        let kf = RationalFunctionField::new(GaloisField::new(q).unwrap());
        let a = build(&kf, &n1, &d1);
        let again = kf.normalize(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(again, a);
    }
}

#[test]
fn frobenius_fixes_every_element() {
    for q in QS {
        let f = GaloisField::new(q).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(&a, q as u64), a, "q = {q}");
        }
    }
}

#[test]
fn zero_denominator_is_rejected() {
    let kf = RationalFunctionField::new(GaloisField::new(3).unwrap());
    assert!(kf.normalize(FqPoly::one(), FqPoly::zero()).is_err());
}
