//! Stabilizers in `Gamma_1(t)` of apartment simplices, described entrywise
//! by degree conditions and enumerated as finite groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{chamber_distance, stable_chamber, Chamber, Edge, Vertex};
use crate::algebra::{FqElem, FqPoly, GaloisField, PolyRing};
use crate::error::{Error, Result};
use crate::mat3::{self, Mat3};

/// Allowed values of one matrix entry.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum EntrySymbol {
    Zero,
    One,
    /// Constants.
    Star,
    /// Polynomials of degree at most `k` (`k >= 1`).
    DegLe(i64),
    /// Multiples of `t` of degree at most `k + 1` (`k >= 0`).
    TDivDegLe(i64),
}

impl EntrySymbol {
    pub fn deg_le(k: i64) -> Self {
        match k {
            k if k < 0 => EntrySymbol::Zero,
            0 => EntrySymbol::Star,
            k => EntrySymbol::DegLe(k),
        }
    }

    pub fn t_div_deg_le(k: i64) -> Self {
        if k < 0 { EntrySymbol::Zero } else { EntrySymbol::TDivDegLe(k) }
    }

    /// Intersection of the two sets.
    pub fn meet(self, other: Self) -> Self {
        use EntrySymbol::*;
        let deg = |s: Self| match s {
            Star => Some(0),
            DegLe(k) => Some(k),
            _ => None,
        };
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (One, One) => One,
            (One, _) | (_, One) => Zero,
            (TDivDegLe(a), TDivDegLe(b)) => Self::t_div_deg_le(a.min(b)),
            (TDivDegLe(a), s) | (s, TDivDegLe(a)) => Self::t_div_deg_le(a.min(deg(s).unwrap() - 1)),
            (a, b) => Self::deg_le(deg(a).unwrap().min(deg(b).unwrap())),
        }
    }

    pub fn contains(&self, p: &FqPoly) -> bool {
        let deg_ok = |k: i64| p.degree().is_none_or(|d| d as i64 <= k);
        match self {
            EntrySymbol::Zero => p.is_zero(),
            EntrySymbol::One => p.is_one(),
            EntrySymbol::Star => deg_ok(0),
            EntrySymbol::DegLe(k) => deg_ok(*k),
            EntrySymbol::TDivDegLe(k) => p.is_zero() || (p.coeff(0).0 == 0 && deg_ok(k + 1)),
        }
    }

    /// All members, in encoding order.
    pub fn elements(&self, field: &GaloisField) -> Vec<FqPoly> {
        let q = field.size() as u64;
        let (low, high) = match self {
            EntrySymbol::Zero => return vec![FqPoly::zero()],
            EntrySymbol::One => return vec![FqPoly::one()],
            EntrySymbol::Star => (0, 0),
            EntrySymbol::DegLe(k) => (0, *k as usize),
            EntrySymbol::TDivDegLe(k) => (1, *k as usize + 1),
        };
        let free = high + 1 - low;
        (0..q.pow(free as u32))
            .map(|mut idx| {
                let mut c = vec![FqElem(0); high + 1];
                for slot in c.iter_mut().skip(low) {
                    *slot = FqElem((idx % q) as u32);
                    idx /= q;
                }
                FqPoly::from_coeffs(c)
            })
            .collect()
    }

    pub fn size(&self, q: u64) -> u64 {
        match self {
            EntrySymbol::Zero | EntrySymbol::One => 1,
            EntrySymbol::Star => q,
            EntrySymbol::DegLe(k) => q.pow(*k as u32 + 1),
            EntrySymbol::TDivDegLe(k) => q.pow(*k as u32 + 1),
        }
    }
}

impl fmt::Display for EntrySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntrySymbol::Zero => write!(f, "0"),
            EntrySymbol::One => write!(f, "1"),
            EntrySymbol::Star => write!(f, "*"),
            EntrySymbol::DegLe(k) => write!(f, "{{{k}}}"),
            EntrySymbol::TDivDegLe(k) => write!(f, "t{{{k}}}"),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SymbolMatrix(pub [[EntrySymbol; 3]; 3]);

impl SymbolMatrix {
    pub fn meet(&self, other: &Self) -> Self {
        SymbolMatrix(mat3::from_fn(|i, j| self.0[i][j].meet(other.0[i][j])))
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.0[i][j].contains(&g.0[i][j])))
    }

    /// Number of matrices in the entrywise product set.
    pub fn box_size(&self, q: u64) -> u64 {
        self.0.iter().flatten().map(|s| s.size(q)).product()
    }
}

/// Element of `GL_3(F_q[t])`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GroupElem(pub Mat3<FqPoly>);

impl GroupElem {
    pub fn identity() -> Self {
        GroupElem(mat3::from_fn(|i, j| if i == j { FqPoly::one() } else { FqPoly::zero() }))
    }

    pub fn from_constants(m: &Mat3<FqElem>) -> Self {
        GroupElem(mat3::map(m, |c| FqPoly::constant(*c)))
    }

    /// Entries as constants, if all of them are.
    pub fn as_constants(&self) -> Option<Mat3<FqElem>> {
        let mut out = [[FqElem(0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[i][j].as_constant()?;
            }
        }
        Some(out)
    }

    pub fn mul(&self, ring: &PolyRing, other: &Self) -> Self {
        GroupElem(mat3::mul(ring, &self.0, &other.0))
    }

    pub fn det(&self, ring: &PolyRing) -> FqPoly {
        mat3::det(ring, &self.0)
    }

    /// Inverse, when the determinant is a unit.
    pub fn inverse(&self, ring: &PolyRing) -> Option<Self> {
        let d = self.det(ring).as_constant().filter(|c| c.0 != 0)?;
        let di = ring.field().inv_e(d)?;
        Some(GroupElem(mat3::map(&mat3::adjugate(ring, &self.0), |x| ring.scale(x, di))))
    }
}

/// Entry conditions for the stabilizer of `[j, k]` in `Gamma_1(t)`.
pub fn vertex_stabilizer(v: &Vertex) -> SymbolMatrix {
    use EntrySymbol as S;
    let (j, k) = (v.j, v.k);
    SymbolMatrix([
        [S::One, S::deg_le(j), S::deg_le(k)],
        [S::t_div_deg_le(-j - 1), S::One, S::deg_le(k - j)],
        [S::t_div_deg_le(-k - 1), S::t_div_deg_le(j - k - 1), S::One],
    ])
}

/// Pointwise stabilizer of a simplex of the apartment (1 to 3 vertices).
pub fn simplex_stabilizer(vertices: &[Vertex]) -> Result<SymbolMatrix> {
    if vertices.is_empty() || vertices.len() > 3 {
        return Err(Error::NotASimplex);
    }
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            if !a.is_adjacent(b) {
                return Err(Error::NotASimplex);
            }
        }
    }
    Ok(vertices
        .iter()
        .map(vertex_stabilizer)
        .reduce(|a, b| a.meet(&b))
        .unwrap())
}

/// All elements with entries in the given sets and unit determinant, sorted.
pub fn enumerate_stabilizer(sym: &SymbolMatrix, field: &GaloisField) -> Vec<GroupElem> {
    let ring = PolyRing::new(field.clone());
    let sets: Vec<Vec<FqPoly>> = sym.0.iter().flatten().map(|s| s.elements(field)).collect();
    let mut out = Vec::new();
    let mut idx = [0usize; 9];
    'outer: loop {
        let m = GroupElem(mat3::from_fn(|i, j| sets[3 * i + j][idx[3 * i + j]].clone()));
        if m.det(&ring).as_constant().is_some_and(|c| c.0 != 0) {
            out.push(m);
        }
        for slot in (0..9).rev() {
            idx[slot] += 1;
            if idx[slot] < sets[slot].len() {
                continue 'outer;
            }
            idx[slot] = 0;
        }
        break;
    }
    out.sort();
    out
}

/// An edge seen from the stable chamber: the nearer chamber, the farther
/// one, and representatives of `Stab(far) / Stab(near)`.
#[derive(Clone, Debug)]
pub struct CosetReps {
    pub near: Chamber,
    pub far: Chamber,
    pub reps: Vec<GroupElem>,
}

pub fn stabilizer_coset_reps(e: &Edge, field: &GaloisField) -> Result<CosetReps> {
    let ring = PolyRing::new(field.clone());
    let s0 = stable_chamber();
    let [a, b] = e.chambers();
    let (near, far) = if chamber_distance(&a, &s0) < chamber_distance(&b, &s0) { (a, b) } else { (b, a) };
    let near_sym = simplex_stabilizer(near.vertices())?;
    let far_group = enumerate_stabilizer(&simplex_stabilizer(far.vertices())?, field);
    let mut reps: Vec<GroupElem> = Vec::new();
    let mut inverses: Vec<GroupElem> = Vec::new();
    for g in far_group {
        let fresh = inverses.iter().all(|hi| !near_sym.contains(&hi.mul(&ring, &g)));
        if fresh {
            inverses.push(g.inverse(&ring).expect("stabilizer elements are invertible"));
            reps.push(g);
        }
    }
    Ok(CosetReps { near, far, reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use EntrySymbol::*;

    #[test]
    fn vertex_symbols() {
        let s = vertex_stabilizer(&Vertex::new(0, 0));
        assert_eq!(s.0, [[One, Star, Star], [Zero, One, Star], [Zero, Zero, One]]);
        let s = vertex_stabilizer(&Vertex::new(-1, -1));
        assert_eq!(s.0, [[One, Zero, Zero], [TDivDegLe(0), One, Star], [TDivDegLe(0), Zero, One]]);
    }

    #[test]
    fn stable_chamber_is_trivial() {
        let f = GaloisField::new(3).unwrap();
        let s = simplex_stabilizer(stable_chamber().vertices()).unwrap();
        assert_eq!(enumerate_stabilizer(&s, &f), vec![GroupElem::identity()]);
    }

    #[test]
    fn small_stabilizer_sizes() {
        let f = GaloisField::new(2).unwrap();
        let v = simplex_stabilizer(&[Vertex::new(0, 0)]).unwrap();
        assert_eq!(enumerate_stabilizer(&v, &f).len(), 8);
        let e = simplex_stabilizer(&[Vertex::new(0, 0), Vertex::new(-1, -1)]).unwrap();
        assert_eq!(e.0[1][2], Star);
        assert_eq!(enumerate_stabilizer(&e, &f).len(), 2);
        let c = simplex_stabilizer(&[Vertex::new(0, 0), Vertex::new(1, 0), Vertex::new(1, 1)]).unwrap();
        assert_eq!(c.0, [[One, Star, Star], [Zero, One, Zero], [Zero, Zero, One]]);
        assert!(simplex_stabilizer(&[Vertex::new(0, 0), Vertex::new(2, 2)]).is_err());
    }
}
