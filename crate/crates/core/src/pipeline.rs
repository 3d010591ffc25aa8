//! One `(i, level, k)` unit: level subspace, Hecke matrix, characteristic
//! polynomial, Newton slopes.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{GaloisField, RatFunc, RationalFunctionField};
use crate::error::Result;
use crate::hecke::hecke_matrix;
use crate::linalg::charpoly;
use crate::representation::{ActionCache, Level};
use crate::slopes::{newton_slopes, SlopeTable};

#[derive(Clone, Debug)]
pub struct Computation {
    pub table: SlopeTable,
    /// `c_0..c_n`, monic.
    pub charpoly: Vec<RatFunc>,
}

impl Computation {
    pub fn charpoly_json(&self) -> Value {
        let t = &self.table;
        json!({
            "q": t.q,
            "k": t.k,
            "i": t.i,
            "level": t.level.tag(),
            "coefficients": self.charpoly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone)]
pub struct Engine {
    pub field: GaloisField,
    pub kf: RationalFunctionField,
    pub cache: Arc<ActionCache>,
}

impl Engine {
    pub fn new(q: u32) -> Result<Self> {
        Self::with_cache(q, Arc::new(ActionCache::new()))
    }

    pub fn with_cache(q: u32, cache: Arc<ActionCache>) -> Result<Self> {
        let field = GaloisField::new(q)?;
        Ok(Engine { kf: RationalFunctionField::new(field.clone()), field, cache })
    }

    pub fn q(&self) -> u32 {
        self.field.size()
    }

    pub fn hecke(&self, i: u8, level: Level, k: usize) -> Result<crate::linalg::Matrix<RatFunc>> {
        hecke_matrix(&self.field, &self.cache, i, level, k)
    }

    pub fn compute(&self, i: u8, level: Level, k: usize) -> Result<Computation> {
        let m = self.hecke(i, level, k)?;
        let cp = charpoly(&self.kf, &m)?;
        let table = SlopeTable { q: self.q(), k, i, level, dim: m.rows(), slopes: newton_slopes(&cp) };
        Ok(Computation { table, charpoly: cp })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slopes::parse_multiset;

    #[test]
    fn small_cells() {
        let e = Engine::new(2).unwrap();
        let c = e.compute(1, Level::Gamma0, 0).unwrap();
        assert_eq!(c.table.slopes, parse_multiset("0^1").unwrap());
        let c = e.compute(1, Level::Gamma0, 1).unwrap();
        assert_eq!(c.table.slopes, parse_multiset("0^1, ∞^2").unwrap());
        let c = e.compute(1, Level::Gl3, 3).unwrap();
        assert_eq!(c.table.dim, 0);
        assert!(c.table.slopes.is_empty());
        assert_eq!(c.charpoly.len(), 1);
    }
}
