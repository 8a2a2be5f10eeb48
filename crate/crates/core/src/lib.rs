//! Diophantine equations manufactured from linear recurrences.
//!
//! For an integer recurrence `a(n) = c1 a(n-1) + ... + cd a(n-d)` with
//! `cd = (-1)^(d+1)` the determinant of the window matrix gives a homogeneous
//! polynomial `P` with `P(window) = 1` along every orbit. For third-order
//! recurrences `(a, b, 1)` the crate also runs the full decision procedure:
//! an exact minimization of the dehomogenized cubic turns into an integer
//! search limit, the solutions below it are enumerated, and the generator
//! solutions are classified and written out as a re-checkable certificate.
//!
//! Module map:
//! - [`exact`]: big rationals, integer polynomials, Sturm root isolation and
//!   real algebraic numbers.
//! - [`mpoly`]: sparse multivariate integer polynomials and symbolic matrices.
//! - [`invariant`]: recurrences, window matrices, shift maps, admissibility.
//! - [`reduction`]: dehomogenization, avoidance regions, exact minima and the
//!   search limit.
//! - [`solver`]: enumeration, generator classification, orbits and the
//!   brute-force verifier.
//! - [`cli`]: pipeline, certificates, proof rendering and plot data.

pub mod cli;
pub mod error;
pub mod exact;
pub mod invariant;
pub mod mpoly;
pub mod reduction;
pub mod solver;

pub use error::{Error, Result};
