//! Coset representatives of the double cosets `Gamma delta_i Gamma` and the
//! finite-group facts behind them: projective-plane orbits and Bruhat
//! decompositions of `GL_3(F_q)`.

use std::collections::HashSet;

use crate::algebra::{FqElem, FqPoly, GaloisField, Ring};
use crate::building::{weyl_elements, Perm};
use crate::error::Result;
use crate::mat3::{self, Mat3};
use crate::representation::{perm_matrix, Level};

/// A point of `P^2(F_q)`, first nonzero coordinate equal to one.
pub type ProjPoint = [FqElem; 3];

pub fn normalize_point(f: &GaloisField, v: [FqElem; 3]) -> Option<ProjPoint> {
    let lead = v.iter().find(|c| c.0 != 0)?;
    let inv = f.inv_e(*lead)?;
    Some(v.map(|c| f.mul_e(c, inv)))
}

/// All `q^2 + q + 1` points: `[1:a:b]`, then `[0:1:a]`, then `[0:0:1]`.
pub fn p2_points(f: &GaloisField) -> Vec<ProjPoint> {
    let (z, o) = (f.zero(), f.one());
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            out.push([o, a, b]);
        }
    }
    out.extend(f.elements().map(|a| [z, o, a]));
    out.push([z, z, o]);
    out
}

fn row_times(f: &GaloisField, x: &ProjPoint, g: &Mat3<FqElem>) -> [FqElem; 3] {
    std::array::from_fn(|j| (0..3).fold(f.zero(), |acc, i| f.add_e(acc, f.mul_e(x[i], g[i][j]))))
}

/// `x . g` (row vector times matrix).
pub fn act_dot(f: &GaloisField, x: &ProjPoint, g: &Mat3<FqElem>) -> ProjPoint {
    normalize_point(f, row_times(f, x, g)).expect("invertible matrices move points to points")
}

/// `x * g = x . (g^{-1})^T`.
pub fn act_star(f: &GaloisField, x: &ProjPoint, g: &Mat3<FqElem>) -> ProjPoint {
    let inv = mat3::inverse(f, g).expect("invertible");
    act_dot(f, x, &mat3::transpose(&inv))
}

/// All of `GL_3(F_q)`.
pub fn gl3(f: &GaloisField) -> Vec<Mat3<FqElem>> {
    let q = f.size();
    let total = (q as u64).pow(9);
    (0..total)
        .filter_map(|mut idx| {
            let m = mat3::from_fn(|_, _| {
                let c = FqElem((idx % q as u64) as u32);
                idx /= q as u64;
                c
            });
            (mat3::det(f, &m).0 != 0).then_some(m)
        })
        .collect()
}

/// Membership of a matrix of `GL_3(F_q)` in the reduction mod `t` of a level.
pub fn level_contains(level: Level, g: &Mat3<FqElem>) -> bool {
    let zero = |i: usize, j: usize| g[i][j].0 == 0;
    match level {
        Level::Gamma1 => zero(1, 0) && zero(2, 0) && zero(2, 1) && (0..3).all(|i| g[i][i].0 == 1),
        Level::Gamma0 => zero(1, 0) && zero(2, 0) && zero(2, 1),
        Level::P0 => zero(2, 0) && zero(2, 1),
        Level::P2 => zero(1, 0) && zero(2, 0),
        Level::Gl3 => true,
    }
}

/// The representative families.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Family {
    Q,
    R,
    S,
}

fn c(x: FqElem) -> FqPoly {
    FqPoly::constant(x)
}

/// Matrices of one family for `delta_i`.
pub fn family(f: &GaloisField, i: u8, fam: Family) -> Vec<Mat3<FqPoly>> {
    let (z, o, t) = (FqPoly::zero(), FqPoly::one(), FqPoly::t());
    let els: Vec<FqElem> = f.elements().collect();
    let mut out = Vec::new();
    match (i, fam) {
        (1, Family::Q) => {
            for &a in &els {
                for &b in &els {
                    out.push([[o.clone(), z.clone(), c(a)], [z.clone(), o.clone(), c(b)], [z.clone(), z.clone(), t.clone()]]);
                }
            }
        }
        (1, Family::R) => {
            for &a in &els {
                out.push([[o.clone(), c(a), z.clone()], [z.clone(), z.clone(), o.clone()], [z.clone(), t.clone(), z.clone()]]);
            }
        }
        (1, Family::S) => out.push([[z.clone(), o.clone(), z.clone()], [z.clone(), z.clone(), o.clone()], [t.clone(), z.clone(), z.clone()]]),
        (_, Family::Q) => {
            for &a in &els {
                for &b in &els {
                    out.push([[o.clone(), c(a), c(b)], [z.clone(), t.clone(), z.clone()], [z.clone(), z.clone(), t.clone()]]);
                }
            }
        }
        (_, Family::R) => {
            for &a in &els {
                out.push([[z.clone(), o.clone(), c(a)], [t.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), t.clone()]]);
            }
        }
        (_, Family::S) => out.push([[z.clone(), z.clone(), o.clone()], [t.clone(), z.clone(), z.clone()], [z.clone(), t.clone(), z.clone()]]),
    }
    out
}

/// Which families represent `Gamma \ Gamma delta_i Gamma`.
pub fn families(i: u8, level: Level) -> &'static [Family] {
    match (i, level) {
        (_, Level::Gl3) => &[Family::Q, Family::R, Family::S],
        (1, Level::P2) | (2, Level::P0) => &[Family::Q, Family::R],
        _ => &[Family::Q],
    }
}

pub fn hecke_reps(f: &GaloisField, i: u8, level: Level) -> Vec<Mat3<FqPoly>> {
    families(i, level).iter().flat_map(|&fam| family(f, i, fam)).collect()
}

/// `delta_i^{-1} eps` reduced mod `t`, if it is integral.
pub fn reduce_rep(i: u8, eps: &Mat3<FqPoly>) -> Option<Mat3<FqElem>> {
    let mut out = [[FqElem(0); 3]; 3];
    for r in 0..3 {
        let divided = (i == 1 && r == 2) || (i == 2 && r >= 1);
        for col in 0..3 {
            let p = &eps[r][col];
            out[r][col] = if divided {
                if p.coeff(0).0 != 0 {
                    return None;
                }
                p.coeff(1)
            } else {
                p.coeff(0)
            };
        }
    }
    Some(out)
}

/// The reduced representatives lie in the level's finite group and move
/// the base point bijectively onto its orbit.
pub fn verify_rep_set(f: &GaloisField, i: u8, level: Level, reps: &[Mat3<FqPoly>], group: &[Mat3<FqElem>]) -> bool {
    let (z, o) = (f.zero(), f.one());
    let act = |x: &ProjPoint, g: &Mat3<FqElem>| if i == 1 { act_star(f, x, g) } else { act_dot(f, x, g) };
    let base = if i == 1 { [z, z, o] } else { [o, z, z] };
    let orbit: HashSet<ProjPoint> =
        group.iter().filter(|g| level_contains(level, g)).map(|g| act(&base, g)).collect();
    let mut hit = HashSet::new();
    for eps in reps {
        let Some(g) = reduce_rep(i, eps) else { return false };
        if mat3::det(f, &g).0 == 0 || !level_contains(level, &g) {
            return false;
        }
        if !hit.insert(act(&base, &g)) {
            return false;
        }
    }
    hit == orbit
}

pub fn verify_reps(f: &GaloisField, i: u8, level: Level) -> bool {
    verify_rep_set(f, i, level, &hecke_reps(f, i, level), &gl3(f))
}

fn upper_unipotent(f: &GaloisField) -> Vec<Mat3<FqElem>> {
    let (z, o) = (f.zero(), f.one());
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                out.push([[o, a, b], [z, o, c], [z, z, o]]);
            }
        }
    }
    out
}

/// Whether `G = disjoint union of left * rho * right` over the given reps.
pub fn double_coset_partition(
    f: &GaloisField,
    group: &[Mat3<FqElem>],
    left: &[Mat3<FqElem>],
    reps: &[Mat3<FqElem>],
    right: &[Mat3<FqElem>],
) -> bool {
    let mut seen: HashSet<Mat3<FqElem>> = HashSet::new();
    for rho in reps {
        let mut cell = HashSet::new();
        for u in left {
            let ur = mat3::mul(f, u, rho);
            for b in right {
                cell.insert(mat3::mul(f, &ur, b));
            }
        }
        if cell.iter().any(|m| seen.contains(m)) {
            return false;
        }
        seen.extend(cell);
    }
    seen.len() == group.len()
}

/// Bruhat decompositions `G = U W B` and `G = U W B^T` for the given Weyl
/// elements (all six for the true statement).
pub fn bruhat_cover(f: &GaloisField, perms: &[Perm]) -> bool {
    let group = gl3(f);
    let u = upper_unipotent(f);
    let reps: Vec<Mat3<FqElem>> = perms.iter().map(perm_matrix).collect();
    let b: Vec<_> = group.iter().filter(|g| level_contains(Level::Gamma0, g)).copied().collect();
    let bt: Vec<_> = b.iter().map(mat3::transpose).collect();
    double_coset_partition(f, &group, &u, &reps, &b) && double_coset_partition(f, &group, &u, &reps, &bt)
}

pub fn bruhat_check(f: &GaloisField) -> bool {
    bruhat_cover(f, &weyl_elements())
}

/// `U \ G / P` has the three representatives `I`, `(123)`, `(132)` for
/// both parabolics.
pub fn double_quotient_check(f: &GaloisField, parabolic: Level) -> Result<bool> {
    let group = gl3(f);
    let u = upper_unipotent(f);
    let p: Vec<_> = group.iter().filter(|g| level_contains(parabolic, g)).copied().collect();
    let w = weyl_elements();
    let reps: Vec<_> = [w[0], w[4], w[5]].iter().map(perm_matrix).collect();
    Ok(double_coset_partition(f, &group, &u, &reps, &p))
}
