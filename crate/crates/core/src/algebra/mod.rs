//! Exact fields, polynomials over a variable split, orders and Hasse derivatives.

pub mod field;
pub mod parse;
pub mod poly;

pub use field::{format_rational, parse_rational, Field, Scalar};
pub use parse::parse_poly;
pub use poly::{ExtRational, Monomial, Order, Poly, VarSplit};
