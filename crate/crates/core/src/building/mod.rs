//! The standard apartment of the Bruhat-Tits building of `PGL_3` over
//! `F_q((1/t))`: vertices, chambers, galleries, the Weyl group and the
//! stabilizers of its simplices in `Gamma_1(t)`.
//!
//! A vertex `[j, k]` is the homothety class of the lattice spanned by
//! `e_1, pi^j e_2, pi^k e_3` with `pi = 1/t`.

mod lattice;
mod stabilizer;

pub use lattice::{
    act_on_chamber, chamber_class_equal, chamber_from_matrix, in_gamma1, stable_chamber_matrix,
    vertex_class_equal, vertex_matrix, verify_reduction,
};
pub use stabilizer::{
    enumerate_stabilizer, simplex_stabilizer, stabilizer_coset_reps, vertex_stabilizer, CosetReps,
    EntrySymbol, GroupElem, SymbolMatrix,
};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalized vertex `[0, j, k]` of the standard apartment.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub j: i64,
    pub k: i64,
}

const STEPS: [[i64; 3]; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

impl Vertex {
    pub const fn new(j: i64, k: i64) -> Self {
        Vertex { j, k }
    }

    /// Class of `[n_1, n_2, n_3]` modulo the diagonal.
    pub fn from_triple(n: [i64; 3]) -> Self {
        Vertex { j: n[1] - n[0], k: n[2] - n[0] }
    }

    pub fn triple(&self) -> [i64; 3] {
        [0, self.j, self.k]
    }

    /// The six apartment vertices adjacent to this one.
    pub fn neighbors(&self) -> [Vertex; 6] {
        let n = self.triple();
        STEPS.map(|d| Vertex::from_triple([n[0] + d[0], n[1] + d[1], n[2] + d[2]]))
    }

    pub fn is_adjacent(&self, other: &Vertex) -> bool {
        let d = [0, other.j - self.j, other.k - self.k];
        let m = *d.iter().min().unwrap();
        let d = d.map(|x| x - m);
        d.iter().all(|&x| x == 0 || x == 1) && d != [0, 0, 0]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.j, self.k)
    }
}

/// A 2-simplex of the apartment; vertices kept sorted.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Chamber([Vertex; 3]);

/// A 1-simplex of the apartment; vertices kept sorted.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Edge([Vertex; 2]);

impl Chamber {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self> {
        if !(a.is_adjacent(&b) && b.is_adjacent(&c) && a.is_adjacent(&c)) {
            return Err(Error::NotAChamber);
        }
        let mut v = [a, b, c];
        v.sort();
        Ok(Chamber(v))
    }

    pub fn from_slice(v: &[Vertex]) -> Result<Self> {
        match v {
            [a, b, c] => Self::new(*a, *b, *c),
            _ => Err(Error::NotAChamber),
        }
    }

    pub fn vertices(&self) -> &[Vertex; 3] {
        &self.0
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.contains(v)
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge([a, b]), Edge([a, c]), Edge([b, c])]
    }

    /// The three chambers sharing an edge with this one.
    pub fn neighbors(&self) -> [Chamber; 3] {
        let [a, b, c] = self.0;
        [(a, b, c), (a, c, b), (b, c, a)].map(|(u, v, w)| {
            // reflect the opposite vertex across the edge
            let n = [0, u.j + v.j - w.j, u.k + v.k - w.k];
            Chamber::new(u, v, Vertex::from_triple(n)).expect("reflection stays in the apartment")
        })
    }

    pub fn act(&self, sigma: &Perm) -> Chamber {
        let [a, b, c] = self.0.map(|v| weyl_act(sigma, &v));
        Chamber::new(a, b, c).expect("Weyl group preserves chambers")
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        if !a.is_adjacent(&b) {
            return Err(Error::NotAnEdge);
        }
        Ok(if a < b { Edge([a, b]) } else { Edge([b, a]) })
    }

    pub fn vertices(&self) -> &[Vertex; 2] {
        &self.0
    }

    /// The two apartment chambers containing the edge.
    pub fn chambers(&self) -> [Chamber; 2] {
        let [u, v] = self.0;
        let mut thirds = u.neighbors().into_iter().filter(|w| v.is_adjacent(w) && *w != v);
        let w1 = thirds.next().expect("edge has two chambers");
        let w2 = thirds.next().expect("edge has two chambers");
        [Chamber::new(u, v, w1).unwrap(), Chamber::new(u, v, w2).unwrap()]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0[0], self.0[1])
    }
}

/// The unique chamber of the apartment with trivial `Gamma_1(t)`-stabilizer.
pub fn stable_chamber() -> Chamber {
    Chamber::new(Vertex::new(0, 0), Vertex::new(-1, -1), Vertex::new(0, -1)).unwrap()
}

/// Gallery distance inside the apartment.
pub fn chamber_distance(a: &Chamber, b: &Chamber) -> usize {
    if a == b {
        return 0;
    }
    let mut seen = HashSet::from([*a]);
    let mut queue = VecDeque::from([(*a, 0usize)]);
    while let Some((c, d)) = queue.pop_front() {
        for n in c.neighbors() {
            if n == *b {
                return d + 1;
            }
            if seen.insert(n) {
                queue.push_back((n, d + 1));
            }
        }
    }
    unreachable!("the apartment is connected")
}

/// `(-1)^{d(c, s_0)}`.
pub fn sgn(c: &Chamber) -> i8 {
    if chamber_distance(c, &stable_chamber()).is_multiple_of(2) { 1 } else { -1 }
}

/// Chambers at gallery distance at most `radius` from the stable chamber,
/// with their distances, in breadth-first order.
pub fn chambers_within(radius: usize) -> Vec<(Chamber, usize)> {
    let s0 = stable_chamber();
    let mut dist = HashMap::from([(s0, 0usize)]);
    let mut order = vec![(s0, 0)];
    let mut queue = VecDeque::from([s0]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if d == radius {
            continue;
        }
        for n in c.neighbors() {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(n) {
                e.insert(d + 1);
                order.push((n, d + 1));
                queue.push_back(n);
            }
        }
    }
    order
}

/// Edges of the chambers within `radius`, sorted.
pub fn edges_within(radius: usize) -> Vec<Edge> {
    let mut edges: Vec<Edge> =
        chambers_within(radius).iter().flat_map(|(c, _)| c.edges()).collect();
    edges.sort();
    edges.dedup();
    edges
}

/// A permutation of `{0, 1, 2}`, `Perm([s(0), s(1), s(2)])`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Perm(pub [usize; 3]);

impl Perm {
    pub fn identity() -> Self {
        Perm([0, 1, 2])
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.map(|i| self.0[i]))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0; 3];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Perm(inv)
    }

    /// Permutation matrix sending `e_i` to `e_{s(i)}`, as 0/1 entries.
    pub fn matrix(&self) -> [[u8; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for (i, &s) in self.0.iter().enumerate() {
            m[s][i] = 1;
        }
        m
    }
}

/// The six Weyl group elements in the order
/// `(), (23), (12), (13), (132), (123)`.
pub fn weyl_elements() -> [Perm; 6] {
    [
        Perm([0, 1, 2]),
        Perm([0, 2, 1]),
        Perm([1, 0, 2]),
        Perm([2, 1, 0]),
        Perm([2, 0, 1]),
        Perm([1, 2, 0]),
    ]
}

/// Action of the permutation matrix on the lattice class of a vertex.
pub fn weyl_act(sigma: &Perm, v: &Vertex) -> Vertex {
    let n = v.triple();
    let mut out = [0; 3];
    for i in 0..3 {
        out[sigma.0[i]] = n[i];
    }
    Vertex::from_triple(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(j: i64, k: i64) -> Vertex {
        Vertex::new(j, k)
    }

    #[test]
    fn chambers_have_three_neighbours() {
        for (c, _) in chambers_within(3) {
            let ns = c.neighbors();
            for n in ns {
                let shared = n.vertices().iter().filter(|x| c.contains(x)).count();
                assert_eq!(shared, 2);
                assert_ne!(n, c);
            }
        }
    }

    #[test]
    fn distances() {
        let s0 = stable_chamber();
        assert_eq!(chamber_distance(&s0, &s0), 0);
        let sigma = weyl_elements()[2];
        assert_eq!(chamber_distance(&s0.act(&sigma), &s0), 1);
        let c = Chamber::new(v(1, 1), v(1, 0), v(0, 0)).unwrap();
        assert_eq!(chamber_distance(&c, &s0), 2);
        assert_eq!(sgn(&s0), 1);
    }

    #[test]
    fn weyl_examples() {
        let w = weyl_elements();
        assert_eq!(weyl_act(&w[5], &v(3, 3)), v(-3, 0));
        assert_eq!(weyl_act(&w[2], &v(-1, -1)), v(1, 0));
        for a in w {
            for b in w {
                let x = v(2, -5);
                assert_eq!(weyl_act(&a.compose(&b), &x), weyl_act(&a, &weyl_act(&b, &x)));
            }
        }
    }

    #[test]
    fn rejects_non_simplices() {
        assert!(Chamber::new(v(0, 0), v(1, 1), v(2, 2)).is_err());
        assert!(Edge::new(v(0, 0), v(2, 0)).is_err());
    }
}
