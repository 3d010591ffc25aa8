//! The coefficient space `V_k`: dual of homogeneous degree-`k` polynomials in
//! `X, Y, Z`, with basis `v_{l,m}` dual to `X^l Y^m Z^{k-l-m}`.
//!
//! Matrices use the column convention: column `(l, m)` holds the image of
//! `v_{l,m}`, so `action_matrix(g h) = action_matrix(g) action_matrix(h)`.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FqElem, GaloisField, RatFunc, RationalFunctionField, Ring};
use crate::building::{self, enumerate_stabilizer, simplex_stabilizer, stable_chamber, weyl_elements, Perm};
use crate::error::{Error, Result};
use crate::linalg::{eigenspace, intersect, kernel, Matrix, Subspace};
use crate::mat3::{self, Mat3};

/// `(l, m)` with `l + m <= k`, lexicographic.
pub fn basis_indices(k: usize) -> Vec<(usize, usize)> {
    (0..=k).flat_map(|l| (0..=k - l).map(move |m| (l, m))).collect()
}

pub fn rep_dim(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// Position of `(l, m)` in [`basis_indices`].
pub fn basis_position(k: usize, l: usize, m: usize) -> usize {
    // rows l' < l contribute (k - l' + 1) entries each
    l * (k + 1) - l * (l.saturating_sub(1)) / 2 + m
}

/// Multinomial coefficient reduced mod `p`, digit by digit (Lucas).
pub fn multinomial_mod_p(parts: &[usize], p: u64) -> u64 {
    let mut rest: Vec<u64> = parts.iter().map(|&x| x as u64).collect();
    let mut result = 1u64;
    while rest.iter().any(|&x| x > 0) {
        let digits: Vec<u64> = rest.iter().map(|x| x % p).collect();
        let n: u64 = digits.iter().sum();
        if n >= p {
            return 0;
        }
        let fact = |x: u64| (1..=x).fold(1u64, |acc, i| acc * i % p);
        let denom = digits.iter().fold(1u64, |acc, &d| acc * fact(d) % p);
        result = result * fact(n) % p * mod_inverse(denom, p) % p;
        for x in rest.iter_mut() {
            *x /= p;
        }
    }
    result
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Coefficients of `(a X + b Y + c Z)^e` as a `(k+1) x (k+1)` grid indexed by
/// the exponents of `X` and `Y`.
fn power_expansion<R: Ring>(r: &R, p: u64, pows: &[Vec<R::Elem>; 3], e: usize, k: usize) -> Vec<R::Elem> {
    let mut grid = vec![r.zero(); (k + 1) * (k + 1)];
    for i in 0..=e {
        for j in 0..=e - i {
            let c = multinomial_mod_p(&[i, j, e - i - j], p);
            if c == 0 {
                continue;
            }
            let mut term = r.mul(&pows[0][i], &pows[1][j]);
            term = r.mul(&term, &pows[2][e - i - j]);
            if !r.is_zero(&term) {
                grid[i * (k + 1) + j] = r.mul(&r.from_int(c as i64), &term);
            }
        }
    }
    grid
}

fn convolve<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem], k: usize) -> Vec<R::Elem> {
    let w = k + 1;
    let mut out = vec![r.zero(); w * w];
    for i1 in 0..w {
        for j1 in 0..w - i1 {
            let x = &a[i1 * w + j1];
            if r.is_zero(x) {
                continue;
            }
            for i2 in 0..w - i1 {
                for j2 in 0..w - i1 - i2 {
                    let y = &b[i2 * w + j2];
                    if j1 + j2 < w - i1 - i2 && !r.is_zero(y) {
                        let slot = &mut out[(i1 + i2) * w + j1 + j2];
                        r.add_mul_assign(slot, x, y);
                    }
                }
            }
        }
    }
    out
}

/// The action matrix without the determinant twist, acting on column vectors
/// in the dual basis: row `(l, m)` is the coefficient table of
/// `L_1^l L_2^m L_3^{k-l-m}`, `L_r` the `r`-th row of `g` read as a linear
/// form, each power expanded by multinomials.
pub fn action_matrix_untwisted<R: Ring>(r: &R, p: u64, g: &Mat3<R::Elem>, k: usize) -> Matrix<R::Elem> {
    let pows: [[Vec<R::Elem>; 3]; 3] = std::array::from_fn(|row| {
        std::array::from_fn(|col| {
            let mut v = vec![r.one()];
            for e in 1..=k {
                v.push(r.mul(&v[e - 1], &g[row][col]));
            }
            v
        })
    });
    let expansions: [Vec<Vec<R::Elem>>; 3] =
        std::array::from_fn(|row| (0..=k).map(|e| power_expansion(r, p, &pows[row], e, k)).collect());
    let idx = basis_indices(k);
    let n = idx.len();
    let mut out = Matrix::zeros(r, n, n);
    for (col, &(l, m)) in idx.iter().enumerate() {
        let first = convolve(r, &expansions[0][l], &expansions[1][m], k);
        let full = convolve(r, &first, &expansions[2][k - l - m], k);
        for (row, &(lam, mu)) in idx.iter().enumerate() {
            out[(col, row)] = full[lam * (k + 1) + mu].clone();
        }
    }
    out
}

/// Matrix of `g` on `V_k` with determinant twist `det(g)^{1-n}`.
pub fn action_matrix<F: Field>(f: &F, p: u64, g: &Mat3<F::Elem>, k: usize, n: i64) -> Result<Matrix<F::Elem>> {
    let det = mat3::det(f, g);
    if f.is_zero(&det) {
        return Err(Error::Singular);
    }
    let e = 1 - n;
    let twist = if e >= 0 { f.pow(&det, e as u64) } else { f.pow(&f.inv(&det).unwrap(), (-e) as u64) };
    let m = action_matrix_untwisted(f, p, g, k);
    Ok(if f.is_one(&twist) { m } else { m.scale(f, &twist) })
}

/// Exponent of `t` on the diagonal of the renormalized `delta_i^{-1}` action.
pub fn delta_exponents(i: u8, k: usize) -> Result<Vec<usize>> {
    let idx = basis_indices(k);
    match i {
        1 => Ok(idx.iter().map(|&(l, m)| l + m).collect()),
        2 => Ok(idx.iter().map(|&(l, _)| l).collect()),
        _ => Err(Error::InvalidIndex(i)),
    }
}

/// `t^{k+i} * action(delta_i^{-1})`, a diagonal matrix of powers of `t`.
pub fn delta_matrix(kf: &RationalFunctionField, i: u8, k: usize) -> Result<Matrix<RatFunc>> {
    let ex = delta_exponents(i, k)?;
    let n = ex.len();
    Ok(Matrix::from_fn(n, n, |a, b| if a == b { kf.t_pow(ex[a] as i64) } else { RatFunc::zero() }))
}

/// Basis indices of the diagonal-torus invariants.
pub fn vd_basis(k: usize, q: u32) -> Vec<(usize, usize)> {
    let d = (q - 1) as usize;
    basis_indices(k)
        .into_iter()
        .filter(|&(l, m)| (l + 1) % d == 0 && (m + 1) % d == 0 && (k - l - m + 1).is_multiple_of(d))
        .collect()
}

/// Congruence levels, from smallest group to largest.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    Gamma1,
    Gamma0,
    P0,
    P2,
    Gl3,
}

impl Level {
    pub const ALL: [Level; 5] = [Level::Gamma1, Level::Gamma0, Level::P0, Level::P2, Level::Gl3];

    pub fn tag(&self) -> &'static str {
        match self {
            Level::Gamma1 => "gamma1",
            Level::Gamma0 => "gamma0",
            Level::P0 => "p0",
            Level::P2 => "p2",
            Level::Gl3 => "gl3",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Level::ALL
            .into_iter()
            .find(|l| l.tag() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownLevel(s.to_string()))
    }
}

type CacheKey = (u32, usize, i64, [u32; 9]);

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    q: u32,
    k: usize,
    n: i64,
    g: [u32; 9],
    rows: usize,
    data: Vec<u32>,
}

/// Insert-once memo of action matrices of constant matrices.
#[derive(Default)]
pub struct ActionCache {
    map: RwLock<HashMap<CacheKey, Arc<Matrix<FqElem>>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

const CACHE_FILE: &str = "action-matrices.json";

impl ActionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, field: &GaloisField, g: &Mat3<FqElem>, k: usize, n: i64) -> Result<Arc<Matrix<FqElem>>> {
        let key: CacheKey = (field.size(), k, n, std::array::from_fn(|i| g[i / 3][i % 3].0));
        if let Some(m) = self.map.read().unwrap().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(m.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let m = Arc::new(action_matrix(field, field.characteristic() as u64, g, k, n)?);
        let mut w = self.map.write().unwrap();
        Ok(w.entry(key).or_insert(m).clone())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.map.read().unwrap().len(),
        }
    }

    /// Write all entries to `dir`, sorted by key.
    pub fn save(&self, dir: &Path) -> Result<()> {
        let map = self.map.read().unwrap();
        let mut entries: Vec<CacheEntry> = map
            .iter()
            .map(|(&(q, k, n, g), m)| CacheEntry {
                q,
                k,
                n,
                g,
                rows: m.rows(),
                data: m.entries().iter().map(|e| e.0).collect(),
            })
            .collect();
        entries.sort_by_key(|e| (e.q, e.k, e.n, e.g));
        std::fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
        let text = serde_json::to_string(&entries).map_err(|e| Error::Cache(e.to_string()))?;
        std::fs::write(dir.join(CACHE_FILE), text).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Load entries written by [`ActionCache::save`]; a missing file is fine.
    pub fn load(&self, dir: &Path) -> Result<usize> {
        let path = dir.join(CACHE_FILE);
        if !path.exists() {
            return Ok(0);
        }
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Cache(e.to_string()))?;
        let entries: Vec<CacheEntry> = serde_json::from_str(&text).map_err(|e| Error::Cache(e.to_string()))?;
        let mut map = self.map.write().unwrap();
        let count = entries.len();
        for e in entries {
            let m = Matrix::from_fn(e.rows, e.rows, |i, j| FqElem(e.data[i * e.rows + j]));
            map.entry((e.q, e.k, e.n, e.g)).or_insert_with(|| Arc::new(m));
        }
        Ok(count)
    }
}

/// Permutation matrix of a Weyl element over `F_q`.
pub fn perm_matrix(sigma: &Perm) -> Mat3<FqElem> {
    mat3::map(&sigma.matrix(), |&x| FqElem(x as u32))
}

fn unit_vectors(f: &GaloisField, n: usize, positions: impl Iterator<Item = usize>) -> Vec<Vec<FqElem>> {
    positions
        .map(|p| {
            let mut v = vec![f.zero(); n];
            v[p] = f.one();
            v
        })
        .collect()
}

/// `ker(M(rho) - sgn(rho s_0) * sum_{g in Stab(rho s_0)} M(g))`.
fn weyl_condition(field: &GaloisField, cache: &ActionCache, rho: &Perm, k: usize) -> Result<Subspace<FqElem>> {
    let chamber = stable_chamber().act(rho);
    let sign = building::sgn(&chamber);
    let group = enumerate_stabilizer(&simplex_stabilizer(chamber.vertices())?, field);
    let n = rep_dim(k);
    let mut sum = Matrix::zeros(field, n, n);
    for g in &group {
        let c = g.as_constants().expect("stabilizers of chambers through [0,0] are constant");
        sum = sum.add(field, &*cache.get(field, &c, k, 0)?)?;
    }
    let sum = if sign < 0 { sum.scale(field, &field.from_int(-1)) } else { sum };
    let lhs = cache.get(field, &perm_matrix(rho), k, 0)?;
    Ok(kernel(field, &lhs.sub(field, &sum)?))
}

/// The subspace of `V_k` identified with `Gamma`-invariant harmonic cocycles.
pub fn level_subspace(field: &GaloisField, cache: &ActionCache, level: Level, k: usize) -> Result<Subspace<FqElem>> {
    let n = rep_dim(k);
    let idx = basis_indices(k);
    if level == Level::Gamma1 {
        return Ok(Subspace::full(field, n));
    }
    let vd_pos = vd_basis(k, field.size()).into_iter().map(|(l, m)| basis_position(k, l, m));
    let vd = Subspace::span(field, n, &unit_vectors(field, n, vd_pos))?;
    debug_assert_eq!(idx.len(), n);
    if level == Level::Gamma0 {
        return Ok(vd);
    }
    let z = FqElem(0);
    let o = FqElem(1);
    let eta0 = [[o, z, z], [o, o, z], [z, z, o]];
    let eta2 = [[o, z, z], [z, o, z], [z, o, o]];
    let eig = |g: Mat3<FqElem>| -> Result<Subspace<FqElem>> {
        eigenspace(field, &*cache.get(field, &g, k, 0)?, &field.one())
    };
    let w = weyl_elements();
    let (sigma, tau) = (w[2], w[1]);
    let mut s = vd;
    match level {
        Level::P0 => {
            s = intersect(field, &s, &eig(eta0)?)?;
            s = intersect(field, &s, &weyl_condition(field, cache, &sigma, k)?)?;
        }
        Level::P2 => {
            s = intersect(field, &s, &eig(eta2)?)?;
            s = intersect(field, &s, &weyl_condition(field, cache, &tau, k)?)?;
        }
        Level::Gl3 => {
            s = intersect(field, &s, &eig(eta0)?)?;
            s = intersect(field, &s, &eig(eta2)?)?;
            for rho in &w[1..] {
                s = intersect(field, &s, &weyl_condition(field, cache, rho, k)?)?;
            }
        }
        Level::Gamma1 | Level::Gamma0 => unreachable!(),
    }
    Ok(s)
}

/// Embed a constant matrix into `F_q(t)`.
pub fn lift_matrix(m: &Matrix<FqElem>) -> Matrix<RatFunc> {
    m.map(|c| RatFunc::constant(*c))
}

/// Embed a constant subspace into `F_q(t)^n`.
pub fn lift_subspace(s: &Subspace<FqElem>) -> Subspace<RatFunc> {
    s.lift(|c| RatFunc::constant(*c))
}
