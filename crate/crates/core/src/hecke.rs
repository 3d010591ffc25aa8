//! Hecke operators `U_1, U_2, T_1, T_2` as explicit signed sums of action
//! matrices of constant matrices, composed with the renormalized
//! `delta_i^{-1}` action and restricted to a level subspace.
//!
//! The operator pieces `A_i, B_i, C_i` are entered twice: once as code
//! ([`a_terms`], [`b_terms`], [`c_terms`]) and once as a text table
//! ([`transcribed_terms`]). The two must agree as multisets.

use crate::algebra::{FqElem, GaloisField, RatFunc, RationalFunctionField, Ring};
use crate::error::{Error, Result};
use crate::linalg::{restrict_operator, Matrix};
use crate::mat3::Mat3;
use crate::representation::{delta_exponents, level_subspace, lift_subspace, rep_dim, ActionCache, Level};

/// A signed constant matrix.
pub type Term = (i8, Mat3<FqElem>);

/// The three operator pieces.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Piece {
    A,
    B,
    C,
}

fn check_index(i: u8) -> Result<()> {
    if i == 1 || i == 2 { Ok(()) } else { Err(Error::InvalidIndex(i)) }
}

pub fn a_terms(f: &GaloisField, i: u8) -> Result<Vec<Term>> {
    check_index(i)?;
    let (z, o) = (f.zero(), f.one());
    let neg = |x: FqElem| f.neg_e(x);
    let inv = |x: FqElem| f.inv_e(x).unwrap();
    let mul = |x: FqElem, y: FqElem| f.mul_e(x, y);
    let mut out = Vec::new();
    for a in f.units() {
        for b in f.units() {
            let ai = inv(a);
            if i == 1 {
                out.push((1, [[o, z, z], [z, o, z], [a, b, o]]));
                out.push((-1, [[z, z, neg(a)], [z, o, z], [ai, mul(ai, b), o]]));
                out.push((-1, [[o, z, z], [neg(mul(a, b)), z, neg(a)], [b, ai, o]]));
                out.push((1, [[z, z, neg(a)], [neg(mul(ai, b)), z, neg(b)], [ai, inv(b), o]]));
            } else {
                out.push((1, [[o, z, z], [a, o, z], [b, z, o]]));
                out.push((-1, [[z, neg(a), z], [ai, o, z], [b, z, o]]));
                out.push((-1, [[z, z, neg(a)], [z, o, b], [ai, z, o]]));
                out.push((1, [[z, neg(a), z], [z, o, neg(mul(ai, b))], [inv(b), z, o]]));
            }
        }
    }
    for a in f.units() {
        let ai = inv(a);
        if i == 1 {
            out.push((1, [[o, z, z], [z, o, z], [a, z, o]]));
            out.push((1, [[o, z, z], [z, o, z], [z, a, o]]));
            out.push((-1, [[z, z, neg(a)], [z, o, z], [ai, z, o]]));
            out.push((-1, [[o, z, z], [z, z, neg(a)], [z, ai, o]]));
        } else {
            out.push((1, [[o, z, z], [a, o, z], [z, z, o]]));
            out.push((1, [[o, z, z], [z, o, z], [a, z, o]]));
            out.push((-1, [[z, neg(a), z], [ai, o, z], [z, z, o]]));
            out.push((-1, [[z, z, neg(a)], [z, o, z], [ai, z, o]]));
        }
    }
    out.push((1, [[o, z, z], [z, o, z], [z, z, o]]));
    Ok(out)
}

pub fn b_terms(f: &GaloisField, i: u8) -> Result<Vec<Term>> {
    check_index(i)?;
    let (z, o) = (f.zero(), f.one());
    let mut out = Vec::new();
    for a in f.units() {
        let ai = f.inv_e(a).unwrap();
        let na = f.neg_e(a);
        if i == 1 {
            out.push((1, [[z, z, na], [ai, z, o], [z, o, z]]));
            out.push((-1, [[o, z, z], [a, z, o], [z, o, z]]));
        } else {
            out.push((1, [[z, o, z], [z, z, na], [ai, z, o]]));
            out.push((-1, [[z, o, z], [o, z, z], [a, z, o]]));
        }
    }
    out.push(if i == 1 { (-1, [[o, z, z], [z, z, o], [z, o, z]]) } else { (-1, [[z, o, z], [o, z, z], [z, z, o]]) });
    Ok(out)
}

pub fn c_terms(f: &GaloisField, i: u8) -> Result<Vec<Term>> {
    check_index(i)?;
    let (z, o) = (f.zero(), f.one());
    Ok(vec![if i == 1 { (-1, [[z, z, o], [o, z, z], [z, o, z]]) } else { (-1, [[z, o, z], [z, z, o], [o, z, z]]) }])
}

pub fn piece_terms(f: &GaloisField, i: u8, piece: Piece) -> Result<Vec<Term>> {
    match piece {
        Piece::A => a_terms(f, i),
        Piece::B => b_terms(f, i),
        Piece::C => c_terms(f, i),
    }
}

/// Which pieces make up the operator at a level.
pub fn combination(i: u8, level: Level) -> Result<&'static [Piece]> {
    check_index(i)?;
    Ok(match (i, level) {
        (_, Level::Gl3) => &[Piece::A, Piece::B, Piece::C],
        (1, Level::P2) | (2, Level::P0) => &[Piece::A, Piece::B],
        _ => &[Piece::A],
    })
}

/// Second, independent entry of the operator pieces as text. Summation
/// ranges: `ab` over pairs of units, `a` over units, `-` a single term.
const TABLE: &[(u8, Piece, &str, i8, &str)] = &[
    (1, Piece::A, "ab", 1, "1 0 0; 0 1 0; a b 1"),
    (1, Piece::A, "ab", -1, "0 0 -a; 0 1 0; 1/a b/a 1"),
    (1, Piece::A, "ab", -1, "1 0 0; -ab 0 -a; b 1/a 1"),
    (1, Piece::A, "ab", 1, "0 0 -a; -b/a 0 -b; 1/a 1/b 1"),
    (1, Piece::A, "a", 1, "1 0 0; 0 1 0; a 0 1"),
    (1, Piece::A, "a", 1, "1 0 0; 0 1 0; 0 a 1"),
    (1, Piece::A, "a", -1, "0 0 -a; 0 1 0; 1/a 0 1"),
    (1, Piece::A, "a", -1, "1 0 0; 0 0 -a; 0 1/a 1"),
    (1, Piece::A, "-", 1, "1 0 0; 0 1 0; 0 0 1"),
    (1, Piece::B, "a", 1, "0 0 -a; 1/a 0 1; 0 1 0"),
    (1, Piece::B, "a", -1, "1 0 0; a 0 1; 0 1 0"),
    (1, Piece::B, "-", -1, "1 0 0; 0 0 1; 0 1 0"),
    (1, Piece::C, "-", -1, "0 0 1; 1 0 0; 0 1 0"),
    (2, Piece::A, "ab", 1, "1 0 0; a 1 0; b 0 1"),
    (2, Piece::A, "ab", -1, "0 -a 0; 1/a 1 0; b 0 1"),
    (2, Piece::A, "ab", -1, "0 0 -a; 0 1 b; 1/a 0 1"),
    (2, Piece::A, "ab", 1, "0 -a 0; 0 1 -b/a; 1/b 0 1"),
    (2, Piece::A, "a", 1, "1 0 0; a 1 0; 0 0 1"),
    (2, Piece::A, "a", 1, "1 0 0; 0 1 0; a 0 1"),
    (2, Piece::A, "a", -1, "0 -a 0; 1/a 1 0; 0 0 1"),
    (2, Piece::A, "a", -1, "0 0 -a; 0 1 0; 1/a 0 1"),
    (2, Piece::A, "-", 1, "1 0 0; 0 1 0; 0 0 1"),
    (2, Piece::B, "a", 1, "0 1 0; 0 0 -a; 1/a 0 1"),
    (2, Piece::B, "a", -1, "0 1 0; 1 0 0; a 0 1"),
    (2, Piece::B, "-", -1, "0 1 0; 1 0 0; 0 0 1"),
    (2, Piece::C, "-", -1, "0 1 0; 0 0 1; 1 0 0"),
];

fn eval_token(f: &GaloisField, tok: &str, a: FqElem, b: FqElem) -> FqElem {
    let (negate, body) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let inv = |x: FqElem| f.inv_e(x).unwrap();
    let v = match body {
        "0" => f.zero(),
        "1" => f.one(),
        "a" => a,
        "b" => b,
        "ab" => f.mul_e(a, b),
        "1/a" => inv(a),
        "1/b" => inv(b),
        "b/a" => f.mul_e(b, inv(a)),
        other => panic!("unknown token `{other}` in operator table"),
    };
    if negate { f.neg_e(v) } else { v }
}

fn eval_entry(f: &GaloisField, text: &str, a: FqElem, b: FqElem) -> Mat3<FqElem> {
    let rows: Vec<Vec<FqElem>> = text
        .split(';')
        .map(|r| r.split_whitespace().map(|tok| eval_token(f, tok, a, b)).collect())
        .collect();
    std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j]))
}

/// Terms of a piece read from the text table.
pub fn transcribed_terms(f: &GaloisField, i: u8, piece: Piece) -> Result<Vec<Term>> {
    check_index(i)?;
    let mut out = Vec::new();
    for &(idx, pc, range, sign, text) in TABLE {
        if idx != i || pc != piece {
            continue;
        }
        let one = f.one();
        match range {
            "ab" => {
                for a in f.units() {
                    for b in f.units() {
                        out.push((sign, eval_entry(f, text, a, b)));
                    }
                }
            }
            "a" => out.extend(f.units().map(|a| (sign, eval_entry(f, text, a, one)))),
            _ => out.push((sign, eval_entry(f, text, one, one))),
        }
    }
    Ok(out)
}

/// Both encodings agree as multisets, for every piece and both indices.
pub fn transcriptions_agree(f: &GaloisField) -> bool {
    [1u8, 2].iter().all(|&i| {
        [Piece::A, Piece::B, Piece::C].iter().all(|&pc| {
            let mut x = piece_terms(f, i, pc).unwrap();
            let mut y = transcribed_terms(f, i, pc).unwrap();
            x.sort();
            y.sort();
            x == y
        })
    })
}

/// `sum sign * M(g)` over `F_q`.
pub fn operator_matrix(f: &GaloisField, cache: &ActionCache, terms: &[Term], k: usize) -> Result<Matrix<FqElem>> {
    let n = rep_dim(k);
    let mut acc = Matrix::zeros(f, n, n);
    for (sign, g) in terms {
        let m = cache.get(f, g, k, 0)?;
        acc = if *sign > 0 { acc.add(f, &m)? } else { acc.sub(f, &m)? };
    }
    Ok(acc)
}

/// The piece matrix `A_i`, `B_i` or `C_i` on `V_k`.
pub fn piece_matrix(f: &GaloisField, cache: &ActionCache, i: u8, piece: Piece, k: usize) -> Result<Matrix<FqElem>> {
    operator_matrix(f, cache, &piece_terms(f, i, piece)?, k)
}

/// Every entry lies in the prime field.
pub fn check_fp_entries(f: &GaloisField, m: &Matrix<FqElem>) -> bool {
    m.entries().iter().all(|c| f.in_prime_field(*c))
}

/// Full operator on `V_k` (before restriction): pieces times the
/// renormalized `delta_i^{-1}`, over `F_q(t)`.
pub fn full_operator(f: &GaloisField, cache: &ActionCache, i: u8, level: Level, k: usize) -> Result<Matrix<RatFunc>> {
    let kf = RationalFunctionField::new(f.clone());
    let n = rep_dim(k);
    let mut sum = Matrix::zeros(f, n, n);
    for &piece in combination(i, level)? {
        sum = sum.add(f, &piece_matrix(f, cache, i, piece, k)?)?;
    }
    let ex = delta_exponents(i, k)?;
    Ok(Matrix::from_fn(n, n, |r, c| {
        let x = sum[(r, c)];
        if x.0 == 0 { RatFunc::zero() } else { kf.mul(&RatFunc::constant(x), &kf.t_pow(ex[c] as i64)) }
    }))
}

/// The Hecke operator at a level, as a matrix on the level subspace.
pub fn hecke_matrix(f: &GaloisField, cache: &ActionCache, i: u8, level: Level, k: usize) -> Result<Matrix<RatFunc>> {
    let kf = RationalFunctionField::new(f.clone());
    let full = full_operator(f, cache, i, level, k)?;
    let sub = lift_subspace(&level_subspace(f, cache, level, k)?);
    restrict_operator(&kf, &full, &sub)
}

/// Operator name as printed: `U_i` below `GL_3(A)`, `T_i` at it.
pub fn operator_name(i: u8, level: Level) -> String {
    if level == Level::Gl3 { format!("T{i}") } else { format!("U{i}") }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings_agree() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            assert!(transcriptions_agree(&GaloisField::new(q).unwrap()), "q = {q}");
        }
    }

    #[test]
    fn weight_zero_values() {
        let f = GaloisField::new(2).unwrap();
        let cache = ActionCache::new();
        assert_eq!(piece_matrix(&f, &cache, 1, Piece::A, 0).unwrap()[(0, 0)], f.one());
        let f3 = GaloisField::new(3).unwrap();
        assert_eq!(piece_matrix(&f3, &cache, 1, Piece::C, 0).unwrap()[(0, 0)], f3.from_int(-1));
    }

    #[test]
    fn term_counts() {
        let f = GaloisField::new(3).unwrap();
        assert_eq!(a_terms(&f, 1).unwrap().len(), 4 * 4 + 4 * 2 + 1);
        assert_eq!(b_terms(&f, 2).unwrap().len(), 2 * 2 + 1);
        assert!(a_terms(&f, 3).is_err());
    }
}
