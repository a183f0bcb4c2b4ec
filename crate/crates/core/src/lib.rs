//! Exact invariants of weighted polynomial ideals (pairs `(J, b)`) at the origin:
//! orders, blow-up transforms, tangent cones, directrix and ridge, coefficient
//! pairs, Newton and pair polyhedra, vertex preparation and the δ-invariant.

pub mod algebra;
pub mod charprep;
pub mod coeff;
pub mod cone;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod pairs;
pub mod polyhedra;

pub use error::{Error, Result};
