//! Vector field of the plane map `(t, s) -> (s/D, 1/D)`, `D = a + b s + t`,
//! sampled on a lattice of the unit square.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{rat, to_sig_digits, BigRat};
use crate::invariant::{build_invariant, is_admissible, Recurrence};
use crate::reduction::{dehomogenize, fixed_point};

pub const PLOT_DIGITS: usize = 12;

/// CSV with header `t,s,dt,ds`, `t` major, then the fixed-point comment.
pub fn plot_csv(rec: &Recurrence, grid_n: usize) -> Result<String> {
    if grid_n < 2 {
        return Err(Error::InvalidInput(format!("grid must be at least 2, got {grid_n}")));
    }
    let (a, b) = rec
        .ab()
        .ok_or_else(|| Error::Unsupported("plot data needs an order-3 recurrence".into()))?;
    let adm = is_admissible(rec)?;
    let alpha = adm
        .dominant_root
        .ok_or_else(|| Error::Domain("no dominant real root".into()))?;
    let f = dehomogenize(&build_invariant(rec))?;
    let fp = fixed_point(rec, &alpha, &f)?;

    let a = BigRat::from_integer(a);
    let b = BigRat::from_integer(b);
    let eps = rat(1, 1_000_000_000);
    let step = |i: usize| BigRat::new(BigInt::from(i), BigInt::from(grid_n - 1));
    let fmt = |q: &BigRat| to_sig_digits(q, PLOT_DIGITS);
    let mut out = String::from("t,s,dt,ds\n");
    for i in 0..grid_n {
        let t = step(i);
        for j in 0..grid_n {
            let s = step(j);
            let den = &a + &b * &s + &t;
            if den.abs() < eps {
                let _ = writeln!(out, "{},{},,", fmt(&t), fmt(&s));
            } else {
                let dt = &s / &den - &t;
                let ds = den.recip() - &s;
                let _ = writeln!(out, "{},{},{},{}", fmt(&t), fmt(&s), fmt(&dt), fmt(&ds));
            }
        }
    }
    let _ = writeln!(
        out,
        "# fixed_point,{},{}",
        fp.t.to_decimal(PLOT_DIGITS),
        fp.s.to_decimal(PLOT_DIGITS)
    );
    Ok(out)
}
