//! Exact linear algebra over any field context, with `F_q(t)` as the main
//! instance.

mod charpoly;
mod echelon;
mod matrix;

pub use charpoly::{berkowitz, charpoly, charpoly_poly, hessenberg};
pub use echelon::{eigenspace, intersect, kernel, rank, restrict_operator, rref, sum, Subspace};
pub use matrix::Matrix;
