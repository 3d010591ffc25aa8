//! Property suites shared by the command line `--verify` switch and the
//! integration tests. Each suite returns a [`Report`] instead of panicking.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FqElem, FqPoly, GaloisField, PolyRing, RatFunc, RationalFunctionField, Ring};
use crate::building::{
    act_on_chamber, chamber_class_equal, edges_within, enumerate_stabilizer, simplex_stabilizer,
    stabilizer_coset_reps, verify_reduction, Chamber, GroupElem, Vertex,
};
use crate::cocycle::{stabilizer_sum, RepAction};
use crate::cosets::{bruhat_check, double_quotient_check, gl3, verify_reps};
use crate::error::Result;
use crate::hecke::{check_fp_entries, piece_matrix, transcriptions_agree, Piece};
use crate::linalg::Matrix;
use crate::mat3::{self, Mat3};
use crate::oracle::naive_action_matrix;
use crate::representation::{action_matrix, action_matrix_untwisted, rep_dim, ActionCache, Level};
use crate::slopes::{newton_slopes, Slope};

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn new(name: &'static str) -> Self {
        Report { name, passed: true, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 20 {
                self.failures.push(what());
            }
        }
    }

    fn error(&mut self, e: crate::error::Error) {
        self.passed = false;
        self.failures.push(format!("error: {e}"));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({} checks)", if self.passed { "PASS" } else { "FAIL" }, self.name, self.checks)?;
        for x in &self.failures {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

fn field(q: u32) -> GaloisField {
    GaloisField::new(q).expect("suite fields are valid")
}

fn lift(m: &Mat3<FqPoly>) -> Mat3<RatFunc> {
    mat3::map(m, |p| RatFunc::from_poly(p.clone()))
}

fn random_poly(rng: &mut ChaCha8Rng, f: &GaloisField, max_deg: usize) -> FqPoly {
    FqPoly::from_coeffs((0..=max_deg).map(|_| f.elem(rng.gen_range(0..f.size()))).collect())
}

/// Operator pieces have entries in the prime field.
pub fn fp_entries(qs: &[u32], max_k: usize) -> Report {
    let mut r = Report::new("prime-field entries");
    for &q in qs {
        let f = field(q);
        let cache = ActionCache::new();
        for i in [1u8, 2] {
            for piece in [Piece::A, Piece::B, Piece::C] {
                for k in 0..=max_k {
                    match piece_matrix(&f, &cache, i, piece, k) {
                        Ok(m) => r.check(check_fp_entries(&f, &m), || format!("q={q} i={i} {piece:?} k={k}")),
                        Err(e) => r.error(e),
                    }
                }
            }
        }
    }
    r
}

/// The two independent encodings of the operator pieces agree.
pub fn transcription(qs: &[u32]) -> Report {
    let mut r = Report::new("double-entry transcription");
    for &q in qs {
        r.check(transcriptions_agree(&field(q)), || format!("q={q}"));
    }
    r
}

/// Cocycles built from random values at the stable chamber are harmonic on
/// every edge within `radius`.
pub fn harmonicity(qs: &[u32], max_k: usize, radius: usize, samples: usize, seed: u64) -> Report {
    let mut r = Report::new("harmonicity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = edges_within(radius);
    for &q in qs {
        let f = field(q);
        let reps: Vec<_> = match edges.iter().map(|e| stabilizer_coset_reps(e, &f)).collect::<Result<_>>() {
            Ok(x) => x,
            Err(e) => {
                r.error(e);
                continue;
            }
        };
        for k in 0..=max_k {
            let act = RepAction::new(&f, k, 0);
            let ring = &act.ring;
            let mut sums: HashMap<Chamber, Matrix<FqPoly>> = HashMap::new();
            let mut sum_of = |c: &Chamber| -> Result<Matrix<FqPoly>> {
                if let Some(m) = sums.get(c) {
                    return Ok(m.clone());
                }
                let m = stabilizer_sum(&act, c)?;
                sums.insert(*c, m.clone());
                Ok(m)
            };
            let ws: Vec<Vec<FqPoly>> =
                (0..samples).map(|_| (0..rep_dim(k)).map(|_| random_poly(&mut rng, &f, 3)).collect()).collect();
            for (e, cr) in edges.iter().zip(&reps) {
                let (far, near) = match (sum_of(&cr.far), sum_of(&cr.near)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(x), _) | (_, Err(x)) => {
                        r.error(x);
                        continue;
                    }
                };
                for w in &ws {
                    let mut total = far.mul_vec(ring, w);
                    let nv = near.mul_vec(ring, w);
                    for g in &cr.reps {
                        let moved = act.apply(g, &nv);
                        total = total.iter().zip(&moved).map(|(a, b)| ring.add(a, b)).collect();
                    }
                    r.check(total.iter().all(FqPoly::is_zero), || format!("q={q} k={k} edge {e}"));
                }
            }
        }
    }
    r
}

/// Stabilizer index `q` across every edge, and the coset representatives
/// move the nearer chamber to `q` distinct chambers other than the farther.
pub fn index_q(qs: &[u32], radius: usize) -> Report {
    let mut r = Report::new("stabilizer index q");
    for &q in qs {
        let f = field(q);
        let kf = RationalFunctionField::new(f.clone());
        for e in edges_within(radius) {
            let res = (|| -> Result<()> {
                let cr = stabilizer_coset_reps(&e, &f)?;
                let near = enumerate_stabilizer(&simplex_stabilizer(cr.near.vertices())?, &f);
                let far = enumerate_stabilizer(&simplex_stabilizer(cr.far.vertices())?, &f);
                let edge = enumerate_stabilizer(&simplex_stabilizer(e.vertices())?, &f);
                r.check(far.len() == q as usize * near.len(), || {
                    format!("q={q} edge {e}: |far|={} |near|={}", far.len(), near.len())
                });
                r.check(edge == far, || format!("q={q} edge {e}: edge stabilizer differs from far chamber"));
                r.check(cr.reps.len() == q as usize, || format!("q={q} edge {e}: {} reps", cr.reps.len()));
                let images: Vec<_> = cr.reps.iter().map(|g| act_on_chamber(&kf, g, &cr.near)).collect();
                let far_classes = act_on_chamber(&kf, &GroupElem::identity(), &cr.far);
                for (a, x) in images.iter().enumerate() {
                    r.check(!chamber_class_equal(&kf, x, &far_classes), || format!("q={q} edge {e}: image {a} is far"));
                    for (b, y) in images.iter().enumerate().skip(a + 1) {
                        r.check(!chamber_class_equal(&kf, x, y), || format!("q={q} edge {e}: images {a},{b} coincide"));
                    }
                }
                Ok(())
            })();
            if let Err(x) = res {
                r.error(x);
            }
        }
    }
    r
}

/// Representatives of the Hecke double cosets, Bruhat decompositions and
/// the parabolic double quotients.
pub fn cosets(qs: &[u32]) -> Report {
    let mut r = Report::new("coset representatives");
    for &q in qs {
        let f = field(q);
        let order: u64 = (0..3).map(|j| (q as u64).pow(3) - (q as u64).pow(j)).product();
        let n = gl3(&f).len() as u64;
        r.check(n == order, || format!("q={q}: |GL3| = {n}, expected {order}"));
        for i in [1u8, 2] {
            for level in Level::ALL {
                r.check(verify_reps(&f, i, level), || format!("q={q} i={i} level={level}"));
            }
        }
        r.check(bruhat_check(&f), || format!("q={q}: Bruhat decomposition"));
        for p in [Level::P0, Level::P2] {
            r.check(double_quotient_check(&f, p).unwrap_or(false), || format!("q={q}: U\\G/{p}"));
        }
    }
    r
}

fn random_mat(rng: &mut ChaCha8Rng, f: &GaloisField, max_deg: usize) -> Mat3<FqPoly> {
    mat3::from_fn(|_, _| random_poly(rng, f, max_deg))
}

fn random_gl3(rng: &mut ChaCha8Rng, f: &GaloisField) -> Mat3<FqElem> {
    loop {
        let m = mat3::from_fn(|_, _| f.elem(rng.gen_range(0..f.size())));
        if mat3::det(f, &m).0 != 0 {
            return m;
        }
    }
}

/// Action matrices: `M(gh) = M(g) M(h)` and agreement with naive
/// substitution, both untwisted over `F_q[t]` and twisted over `F_q`.
pub fn action_oracle(qs: &[u32], max_k: usize, samples: usize, seed: u64) -> Report {
    let mut r = Report::new("action matrices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &q in qs {
        let f = field(q);
        let ring = PolyRing::new(f.clone());
        let p = f.characteristic() as u64;
        for k in 0..=max_k {
            for s in 0..samples {
                let g = random_mat(&mut rng, &f, 2);
                let h = random_mat(&mut rng, &f, 2);
                let mg = action_matrix_untwisted(&ring, p, &g, k);
                let mh = action_matrix_untwisted(&ring, p, &h, k);
                let mgh = action_matrix_untwisted(&ring, p, &mat3::mul(&ring, &g, &h), k);
                r.check(mg.mul(&ring, &mh).ok() == Some(mgh), || format!("q={q} k={k} sample {s}: multiplicativity"));
                r.check(naive_action_matrix(&ring, &g, k) == mg, || format!("q={q} k={k} sample {s}: substitution"));
                let (a, b) = (random_gl3(&mut rng, &f), random_gl3(&mut rng, &f));
                let n = [-1i64, 0, 2][s % 3];
                let ok = (|| -> Result<bool> {
                    let ma = action_matrix(&f, p, &a, k, n)?;
                    let mb = action_matrix(&f, p, &b, k, n)?;
                    Ok(ma.mul(&f, &mb)? == action_matrix(&f, p, &mat3::mul(&f, &a, &b), k, n)?)
                })();
                r.check(ok == Ok(true), || format!("q={q} k={k} n={n} sample {s}: twisted multiplicativity"));
            }
        }
    }
    r
}

/// Slopes of random split polynomials `prod (X - u_j t^{e_j})`, some roots
/// zero, recover the exponents.
pub fn newton_oracle(qs: &[u32], samples: usize, seed: u64) -> Report {
    let mut r = Report::new("Newton polygons");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &q in qs {
        let f = field(q);
        let kf = RationalFunctionField::new(f.clone());
        let units: Vec<FqElem> = f.units().collect();
        for s in 0..samples {
            let n = rng.gen_range(1..=8);
            let mut expected: Vec<Slope> = Vec::new();
            let mut poly = vec![RatFunc::one()];
            for _ in 0..n {
                let root = if rng.gen_bool(0.15) {
                    expected.push(Slope::Infinite);
                    RatFunc::zero()
                } else {
                    let e = rng.gen_range(-2..=6);
                    expected.push(Slope::int(e));
                    let u = units[rng.gen_range(0..units.len())];
                    kf.mul(&RatFunc::constant(u), &kf.t_pow(e))
                };
                let mut next = vec![RatFunc::zero(); poly.len() + 1];
                for (j, c) in poly.iter().enumerate() {
                    next[j + 1] = kf.add(&next[j + 1], c);
                    next[j] = kf.sub(&next[j], &kf.mul(&root, c));
                }
                poly = next;
            }
            expected.sort();
            let got: Vec<Slope> =
                newton_slopes(&poly).into_iter().flat_map(|(s, m)| std::iter::repeat_n(s, m)).collect();
            r.check(got == expected, || format!("q={q} sample {s}: {got:?} vs {expected:?}"));
        }
    }
    r
}

/// The representatives `[[1,a,0],[0,0,1],[0,t,0]]` of the `R` family for `delta_1`.
pub fn r1_rep(f: &GaloisField, a: FqElem) -> Mat3<FqPoly> {
    let _ = f;
    let (z, o, t) = (FqPoly::zero(), FqPoly::one(), FqPoly::t());
    [[o.clone(), FqPoly::constant(a), z.clone()], [z.clone(), z.clone(), o], [z.clone(), t, z]]
}

/// `[[1,0,0],[0,1,0],[a^{-1} t,0,1]]`.
pub fn r1_gamma(f: &GaloisField, a: FqElem) -> GroupElem {
    let (z, o) = (FqPoly::zero(), FqPoly::one());
    let ai = f.inv_e(a).expect("nonzero");
    GroupElem([[o.clone(), z.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [FqPoly::monomial(ai, 1), z, o]])
}

/// The chamber reached by the `a = 0` representative.
pub fn r1_zero_target() -> Chamber {
    Chamber::new(Vertex::new(-1, -1), Vertex::new(0, -1), Vertex::new(-1, -2)).expect("a chamber")
}

/// Recompute the `B` piece for `delta_1` from the reduction of the `R`
/// family: `sum_{a != 0} M(eps_a^{-1} gamma_a) + M(eps_0^{-1}) c(s)`, then
/// undo the `delta_1^{-1}` action. Returns the recomputed and the encoded
/// piece over `F_q(t)`.
pub fn b1_from_reduction(f: &GaloisField, cache: &ActionCache, k: usize) -> Result<(Matrix<RatFunc>, Matrix<RatFunc>)> {
    let kf = RationalFunctionField::new(f.clone());
    let p = f.characteristic() as u64;
    let dim = rep_dim(k);
    let inv = |m: &Mat3<RatFunc>| mat3::inverse(&kf, m).ok_or(crate::error::Error::Singular);
    let mut acc = Matrix::zeros(&kf, dim, dim);
    for a in f.units() {
        let g = mat3::mul(&kf, &inv(&lift(&r1_rep(f, a)))?, &lift(&r1_gamma(f, a).0));
        acc = acc.add(&kf, &action_matrix(&kf, p, &g, k, 0)?)?;
    }
    let e0 = action_matrix(&kf, p, &inv(&lift(&r1_rep(f, f.zero())))?, k, 0)?;
    let act = RepAction::new(f, k, 0);
    let s = stabilizer_sum(&act, &r1_zero_target())?.map(|x| RatFunc::from_poly(x.clone()));
    acc = acc.add(&kf, &e0.mul(&kf, &s)?)?;
    let (one, zero) = (RatFunc::one(), RatFunc::zero());
    let delta = mat3::diag(&zero, [one.clone(), one, kf.t()]);
    let recomputed = acc.mul(&kf, &action_matrix(&kf, p, &delta, k, 0)?)?;
    let encoded = piece_matrix(f, cache, 1, Piece::B, k)?.map(|x| RatFunc::constant(*x));
    Ok((recomputed, encoded))
}

/// Reduction fixtures for the `R` family of `delta_1`, and the `B` piece
/// recomputed from them.
pub fn reduction_fixtures(qs: &[u32], max_k: usize) -> Report {
    let mut r = Report::new("reduction fixtures");
    for &q in qs {
        let f = field(q);
        let kf = RationalFunctionField::new(f.clone());
        let s0 = crate::building::stable_chamber();
        for a in f.units() {
            r.check(verify_reduction(&kf, &r1_rep(&f, a), &r1_gamma(&f, a), &s0), || format!("q={q} a={}", a.0));
        }
        let e0 = r1_rep(&f, f.zero());
        r.check(verify_reduction(&kf, &e0, &GroupElem::identity(), &r1_zero_target()), || format!("q={q} a=0"));
        r.check(!verify_reduction(&kf, &e0, &GroupElem::identity(), &s0), || format!("q={q} a=0 against s0"));
        let cache = ActionCache::new();
        for k in 0..=max_k {
            match b1_from_reduction(&f, &cache, k) {
                Ok((x, y)) => r.check(x == y, || format!("q={q} k={k}: B piece differs from its recomputation")),
                Err(e) => r.error(e),
            }
        }
    }
    r
}

/// Everything behind `--verify`, at sizes that run in seconds.
pub fn run_all(seed: u64) -> Vec<Report> {
    vec![
        transcription(&[2, 3, 4, 5, 7, 8, 9]),
        fp_entries(&[2, 3, 4], 6),
        harmonicity(&[2, 3], 3, 3, 2, seed),
        index_q(&[2, 3], 4),
        cosets(&[2, 3]),
        action_oracle(&[2, 3], 4, 5, seed),
        newton_oracle(&[2, 3], 50, seed),
        reduction_fixtures(&[2, 3], 3),
    ]
}
