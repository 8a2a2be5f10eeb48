//! Sparse multivariate integer polynomials, their canonical text form, and
//! symbolic matrices with exact determinants and resultants.

mod matrix;
mod parse;
mod poly;

pub use matrix::{resultant, PolyMatrix};
pub use poly::{Monomial, MultiPoly};
