use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::BigRat;

/// Dense univariate polynomial with integer coefficients, constant term
/// first. The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators with a positive factor: returns `(k * p, k)`.
    pub fn from_rationals(coeffs: &[BigRat]) -> (Self, BigInt) {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        (Self::new(ints), lcm)
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - q` scaled to integers, i.e. `den * x - num`.
    pub fn linear_root(q: &BigRat) -> Self {
        Self::new(vec![-q.numer().clone(), q.denom().clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + BigRat::from_integer(c.clone()))
    }

    /// Sign of `p(q)`, computed without rational arithmetic: with
    /// `q = n/d`, `d^deg * p(q)` is an integer of the same sign.
    pub fn sign_at(&self, q: &BigRat) -> Ordering {
        let Some(deg) = self.degree() else {
            return Ordering::Equal;
        };
        let (n, d) = (q.numer(), q.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        let mut terms = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            terms.push(dpow.clone());
            dpow *= d;
        }
        // acc = sum c_i n^i d^(deg - i), by Horner in n
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * n + c * &terms[deg - i];
        }
        acc.sign_ordering()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the (positive) content, keeping the sign of every
    /// coefficient.
    pub fn content_free(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Content-free with a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        let p = self.content_free();
        match p.leading() {
            Some(l) if l.is_negative() => -p,
            _ => p,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(x^n)`.
    pub fn compose_power(&self, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg * p(1/x)`; the nonzero roots become their reciprocals.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    fn to_rationals(&self) -> Vec<BigRat> {
        self.coeffs
            .iter()
            .map(|c| BigRat::from_integer(c.clone()))
            .collect()
    }

    /// Division over the rationals.
    pub fn div_rem_rational(&self, divisor: &Self) -> (Vec<BigRat>, Vec<BigRat>) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = BigRat::from_integer(divisor.leading().unwrap().clone());
        let dv = divisor.to_rationals();
        let mut rem = self.to_rationals();
        if rem.len() <= d {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigRat::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] / &lead;
            if !c.is_zero() {
                for (j, dj) in dv.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        (quot, rem)
    }

    /// Remainder scaled by a positive rational to integer content-free form;
    /// signs are preserved, which Sturm chains rely on.
    pub fn rem_scaled(&self, divisor: &Self) -> Self {
        let (_, r) = self.div_rem_rational(divisor);
        UniPoly::from_rationals(&r).0.content_free()
    }

    /// Exact quotient up to a positive rational factor, returned primitive.
    pub fn quotient_primitive(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem_rational(divisor);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        UniPoly::from_rationals(&q).0.primitive()
    }

    /// Remainder of `self` modulo `divisor` over the rationals.
    pub fn rem_rational(&self, divisor: &Self) -> Vec<BigRat> {
        self.div_rem_rational(divisor).1
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem_scaled(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Square-free part, primitive with positive leading coefficient.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.primitive()
        } else {
            self.quotient_primitive(&g)
        }
    }

    /// Renders in the variable `var`, highest power first
    /// (e.g. `X^3 - X^2 - X - 1`).
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("X"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, UniPoly::zero());
        assert_eq!(a.pow(3), p(&[-1, 3, -3, 1]));
    }

    #[test]
    fn evaluation_and_sign() {
        let f = p(&[-1, -1, -1, 1]);
        assert_eq!(f.eval_int(&BigInt::from(2)), BigInt::from(1));
        assert_eq!(f.eval_rat(&rat(1, 2)), rat(-13, 8));
        assert_eq!(f.sign_at(&rat(1, 2)), Ordering::Less);
        assert_eq!(f.sign_at(&int(2)), Ordering::Greater);
        assert_eq!(p(&[-1, 0, 1]).sign_at(&int(-1)), Ordering::Equal);
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(f.square_free(), p(&[-2, 1, 1]));
        let g = f.gcd(&p(&[-1, 0, 1]));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(p(&[6, 4]).primitive(), p(&[3, 2]));
        assert_eq!(p(&[6, -4]).primitive(), p(&[-3, 2]));
    }

    #[test]
    fn transforms() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.compose_power(3), p(&[1, 0, 0, 2, 0, 0, 3]));
        assert_eq!(f.negate_variable(), p(&[1, -2, 3]));
        assert_eq!(f.reversed(), p(&[3, 2, 1]));
    }

    #[test]
    fn render() {
        assert_eq!(p(&[-1, -1, -1, 1]).to_string(), "X^3 - X^2 - X - 1");
        assert_eq!(p(&[44, -796, 27]).render("m"), "27*m^2 - 796*m + 44");
        assert_eq!(p(&[0, -1]).to_string(), "-X");
    }
}
