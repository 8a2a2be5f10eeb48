//! Exact arithmetic kernel: big rationals, integer polynomials, Sturm root
//! isolation and real algebraic numbers.

pub mod algebraic;
pub mod interval;
mod quotient;
pub mod rational;
pub mod roots;
pub mod unipoly;

pub use algebraic::AlgebraicNumber;
pub use interval::Interval;
pub use rational::{int, parse_rat, rat, simplest_between, to_f64, to_fraction_string, to_sig_digits, BigRat};
pub use roots::{count_real_roots, isolate_real_roots, root_bound, SturmChain};
pub use unipoly::UniPoly;
