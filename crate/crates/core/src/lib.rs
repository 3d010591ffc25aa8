//! Newton slopes of Hecke operators on harmonic cocycles for `GL_3` over
//! `F_q(t)`.
//!
//! The pipeline: build the coefficient representation `V_k`, carve out the
//! subspace attached to a congruence level, restrict the Hecke operator to
//! it, take the exact characteristic polynomial over `F_q(t)` and read off
//! the `t`-adic Newton slopes.

pub mod algebra;
pub mod building;
pub mod cocycle;
pub mod cosets;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod mat3;
pub mod oracle;
pub mod pipeline;
pub mod representation;
pub mod slopes;
pub mod verify;

pub use algebra::{FieldSpec, FqElem, FqPoly, GaloisField, RatFunc, RationalFunctionField, Valuation};
pub use building::{Chamber, Edge, GroupElem, Vertex};
pub use error::{Error, Result};
pub use representation::Level;
pub use linalg::{Matrix, Subspace};
pub use slopes::{Slope, SlopeTable};
