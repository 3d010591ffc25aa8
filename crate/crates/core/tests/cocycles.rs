use std::collections::HashSet;

use cocycle_core::algebra::{Field, PolyRing, Ring};
use cocycle_core::building::{chambers_within, stable_chamber};
use cocycle_core::cocycle::{cocycle_value, RepAction};
use cocycle_core::cosets::{act_dot, act_star, double_quotient_check, gl3, level_contains, p2_points, ProjPoint};
use cocycle_core::hecke::{full_operator, hecke_matrix};
use cocycle_core::linalg::{intersect, Subspace};
use cocycle_core::mat3::{self, Mat3};
use cocycle_core::representation::{action_matrix, level_subspace, lift_subspace, rep_dim, ActionCache};
use cocycle_core::slopes::{newton_slopes, Slope};
use cocycle_core::{FqElem, FqPoly, GaloisField, Level, RatFunc, RationalFunctionField, Valuation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly_vec(f: &GaloisField, raw: &[u32], n: usize) -> Vec<FqPoly> {
    (0..n)
        .map(|i| FqPoly::from_coeffs(raw.iter().skip(i).step_by(n).map(|&c| f.elem(c % f.size())).collect()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cocycle_values_are_linear(q in prop::sample::select(vec![2u32, 3]), k in 0usize..4, alpha in 1u32..3, a in prop::collection::vec(0u32..3, 30), b in prop::collection::vec(0u32..3, 30)) {
        let f = GaloisField::new(q).unwrap();
        let act = RepAction::new(&f, k, 0);
        let ring = &act.ring;
        let n = rep_dim(k);
        let (w1, w2) = (poly_vec(&f, &a, n), poly_vec(&f, &b, n));
        let al = f.elem(alpha % q);
        let combo: Vec<FqPoly> = w1.iter().zip(&w2).map(|(x, y)| ring.add(&ring.scale(x, al), y)).collect();
        for (c, _) in chambers_within(3) {
            let lhs = cocycle_value(&act, &combo, &c).unwrap();
            let v1 = cocycle_value(&act, &w1, &c).unwrap();
            let v2 = cocycle_value(&act, &w2, &c).unwrap();
            let rhs: Vec<FqPoly> = v1.iter().zip(&v2).map(|(x, y)| ring.add(&ring.scale(x, al), y)).collect();
            prop_assert_eq!(lhs, rhs);
        }
        if w1.iter().any(|x| !x.is_zero()) {
            prop_assert_eq!(cocycle_value(&act, &w1, &stable_chamber()).unwrap(), w1);
        }
    }
}

fn random_gl3(rng: &mut ChaCha8Rng, f: &GaloisField) -> Mat3<FqElem> {
    loop {
        let m = mat3::from_fn(|_, _| f.elem(rng.gen_range(0..f.size())));
        if mat3::det(f, &m).0 != 0 {
            return m;
        }
    }
}

fn check_right_actions(f: &GaloisField, x: &ProjPoint, g: &Mat3<FqElem>, h: &Mat3<FqElem>) {
    let gh = mat3::mul(f, g, h);
    assert_eq!(act_dot(f, x, &gh), act_dot(f, &act_dot(f, x, g), h));
    assert_eq!(act_star(f, x, &gh), act_star(f, &act_star(f, x, g), h));
}

#[test]
fn projective_actions_are_right_actions() {
    let f = GaloisField::new(2).unwrap();
    let group = gl3(&f);
    let points = p2_points(&f);
    for g in &group {
        for h in group.iter().step_by(3) {
            for x in &points {
                check_right_actions(&f, x, g, h);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [3, 4] {
        let f = GaloisField::new(q).unwrap();
        let points = p2_points(&f);
        for _ in 0..200 {
            let (g, h) = (random_gl3(&mut rng, &f), random_gl3(&mut rng, &f));
            check_right_actions(&f, &points[rng.gen_range(0..points.len())], &g, &h);
        }
    }
}

#[test]
fn orbit_times_stabilizer_is_group_order() {
    for q in [2, 3] {
        let f = GaloisField::new(q).unwrap();
        let all = gl3(&f);
        let (z, o) = (f.zero(), f.one());
        for level in Level::ALL {
            let group: Vec<_> = all.iter().filter(|g| level_contains(level, g)).collect();
            for (base, star) in [([z, z, o], true), ([o, z, z], false)] {
                let act = |g: &Mat3<FqElem>| if star { act_star(&f, &base, g) } else { act_dot(&f, &base, g) };
                let orbit: HashSet<ProjPoint> = group.iter().map(|g| act(g)).collect();
                let stab = group.iter().filter(|g| act(g) == base).count();
                assert_eq!(orbit.len() * stab, group.len(), "q={q} {level}");
            }
        }
    }
}

#[test]
fn parabolic_double_quotients_have_three_cells() {
    for q in [2, 3] {
        let f = GaloisField::new(q).unwrap();
        for p in [Level::P0, Level::P2] {
            assert!(double_quotient_check(&f, p).unwrap(), "q={q} {p}");
        }
    }
}

#[test]
fn level_subspaces_form_a_chain() {
    for q in [2u32, 3] {
        let f = GaloisField::new(q).unwrap();
        let cache = ActionCache::new();
        for k in 0..=6 {
            let get = |l| level_subspace(&f, &cache, l, k).unwrap();
            let (g1, g0, p0, p2, gl) = (get(Level::Gamma1), get(Level::Gamma0), get(Level::P0), get(Level::P2), get(Level::Gl3));
            let both = intersect(&f, &p0, &p2).unwrap();
            assert!(gl.is_subspace_of(&f, &both), "q={q} k={k}");
            assert!(both.is_subspace_of(&f, &g0));
            assert!(g0.is_subspace_of(&f, &g1));
            assert_eq!(g1.dim(), rep_dim(k));
            if q == 2 {
                assert_eq!(g0.dim(), (k + 2) * (k + 1) / 2);
            }
        }
    }
}

#[test]
fn constant_matrices_act_without_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u32, 3, 4] {
        let f = GaloisField::new(q).unwrap();
        let kf = RationalFunctionField::new(f.clone());
        for k in 0..=4 {
            let g = random_gl3(&mut rng, &f);
            let lifted = mat3::map(&g, |c| RatFunc::constant(*c));
            let m = action_matrix(&kf, f.characteristic() as u64, &lifted, k, 0).unwrap();
            assert!(m.entries().iter().all(|x| x.as_constant().is_some() || x.is_zero()));
        }
    }
}

#[test]
fn unit_level_operator_restricts_to_diagonal_level() {
    for q in [2u32, 3] {
        let f = GaloisField::new(q).unwrap();
        let kf = RationalFunctionField::new(f.clone());
        let cache = ActionCache::new();
        for i in [1u8, 2] {
            for k in 0..=5 {
                let full = full_operator(&f, &cache, i, Level::Gamma1, k).unwrap();
                let wide = hecke_matrix(&f, &cache, i, Level::Gamma1, k).unwrap();
                assert_eq!(wide, full);
                let narrow = hecke_matrix(&f, &cache, i, Level::Gamma0, k).unwrap();
                let vd: Subspace<RatFunc> = lift_subspace(&level_subspace(&f, &cache, Level::Gamma0, k).unwrap());
                if q == 2 {
                    assert_eq!(narrow, wide);
                }
                for (col, b) in vd.basis().iter().enumerate() {
                    let image = full.mul_vec(&kf, b);
                    let coords = vd.coordinates(&kf, &image).expect("diagonal block is preserved");
                    for (row, c) in coords.iter().enumerate() {
                        assert_eq!(*c, narrow[(row, col)], "q={q} i={i} k={k}");
                    }
                }
            }
        }
    }
}

fn val_strategy() -> impl Strategy<Value = Vec<Option<(u8, u32)>>> {
    prop::collection::vec(prop::option::weighted(0.8, (0u8..6, 1u32..3)), 1..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn newton_polygon_laws(raw in val_strategy(), q in prop::sample::select(vec![2u32, 3])) {
        let f = GaloisField::new(q).unwrap();
        let kf = RationalFunctionField::new(f.clone());
        let ring = PolyRing::new(f.clone());
        // random c_0..c_{n-1} with chosen t-orders, then a monic top coefficient
        let mut coeffs: Vec<RatFunc> = raw
            .iter()
            .map(|x| match x {
                None => RatFunc::zero(),
                Some((e, u)) => {
                    let p = ring.add(&FqPoly::monomial(f.elem(u % q), *e as usize), &FqPoly::monomial(f.one(), *e as usize + 1));
                    RatFunc::from_poly(p)
                }
            })
            .collect();
        coeffs.push(kf.one());
        let slopes = newton_slopes(&coeffs);
        let degree = coeffs.len() - 1;
        prop_assert_eq!(slopes.iter().map(|(_, m)| m).sum::<usize>(), degree);
        let infinite = slopes.iter().find(|(s, _)| *s == Slope::Infinite).map_or(0, |(_, m)| *m);
        let finite_sum: num_rational::Rational64 = slopes
            .iter()
            .filter_map(|(s, m)| match s {
                Slope::Finite(r) => Some(*r * num_rational::Rational64::from_integer(*m as i64)),
                Slope::Infinite => None,
            })
            .sum();
        match coeffs[infinite].t_valuation() {
            Valuation::Finite(v) => prop_assert_eq!(finite_sum, num_rational::Rational64::from_integer(v)),
            Valuation::Infinite => prop_assert!(false, "lowest surviving coefficient vanished"),
        }
        let seq: Vec<Slope> = slopes.iter().map(|(s, _)| *s).collect();
        prop_assert!(seq.windows(2).all(|w| w[0] < w[1]));
        let _ = kf.inv(&coeffs[degree]);
    }
}

#[test]
fn diagonal_level_is_the_torus_fixed_space() {
    for q in [2u32, 3, 4, 5] {
        let f = GaloisField::new(q).unwrap();
        let cache = ActionCache::new();
        let units: Vec<FqElem> = f.units().collect();
        for k in 0..=7 {
            let mut fixed = Subspace::full(&f, rep_dim(k));
            for &a in &units {
                for &b in &units {
                    for &c in &units {
                        let z = f.zero();
                        let m = cache.get(&f, &[[a, z, z], [z, b, z], [z, z, c]], k, 0).unwrap();
                        fixed = intersect(&f, &fixed, &cocycle_core::linalg::eigenspace(&f, &m, &f.one()).unwrap()).unwrap();
                    }
                }
            }
            assert_eq!(level_subspace(&f, &cache, Level::Gamma0, k).unwrap(), fixed, "q={q} k={k}");
            if (k + 3) % (q as usize - 1) != 0 {
                assert_eq!(fixed.dim(), 0, "q={q} k={k}");
            }
        }
    }
}
