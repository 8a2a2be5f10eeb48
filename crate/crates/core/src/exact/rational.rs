use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number with a positive, coprime denominator.
pub type BigRat = BigRational;

pub fn rat(numer: i64, denom: i64) -> BigRat {
    BigRat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(value))
}

/// Renders as `num/den`, always with an explicit denominator.
pub fn to_fraction_string(value: &BigRat) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rat(text: &str) -> Result<BigRat> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
            }
            Ok(BigRat::new(n, d))
        }
        None => Ok(BigRat::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(value: &BigRat) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // to_f64 only fails on overflow
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// The rational with the smallest denominator (then smallest magnitude
/// numerator) in the closed interval `[lo, hi]`, found by walking the
/// continued fraction expansions of both endpoints.
pub fn simplest_between(lo: &BigRat, hi: &BigRat) -> BigRat {
    assert!(lo <= hi, "simplest_between on an empty interval");
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        BigRat::zero()
    }
}

fn simplest_positive(lo: &BigRat, hi: &BigRat) -> BigRat {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl < hi.floor() {
        return fl + BigRat::one();
    }
    // both in (fl, fl + 1): recurse on the reciprocals of the fractional parts
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

/// Decimal rendering rounded to `sig` significant digits, with trailing
/// zeros removed.
pub fn to_sig_digits(value: &BigRat, sig: usize) -> String {
    assert!(sig > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let mag = value.abs();
    // exponent e with 10^e <= mag < 10^(e+1)
    let mut e = estimate_exponent(&mag);
    while pow10(e) > mag {
        e -= 1;
    }
    while pow10(e + 1) <= mag {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &mag * pow10(shift);
    let mut digits = round_half_up(&scaled);
    let mut shift = shift;
    if digits >= BigInt::from(10u32).pow(sig as u32) {
        digits /= 10;
        shift -= 1;
    }
    let mut body = digits.to_string();
    let out = if shift <= 0 {
        body.push_str(&"0".repeat((-shift) as usize));
        body
    } else {
        let shift = shift as usize;
        if body.len() <= shift {
            body = format!("{}{}", "0".repeat(shift - body.len() + 1), body);
        }
        let split = body.len() - shift;
        let (int_part, frac_part) = body.split_at(split);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    };
    if negative {
        format!("-{out}")
    } else {
        out
    }
}

fn estimate_exponent(mag: &BigRat) -> i64 {
    let digits = |n: &BigInt| n.to_string().trim_start_matches('-').len() as i64;
    digits(mag.numer()) - digits(mag.denom())
}

fn pow10(e: i64) -> BigRat {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRat::from_integer(p)
    } else {
        BigRat::new(BigInt::one(), p)
    }
}

fn round_half_up(value: &BigRat) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = value.numer().div_mod_floor(value.denom());
    if r * &two >= *value.denom() {
        q + 1
    } else {
        q
    }
}
