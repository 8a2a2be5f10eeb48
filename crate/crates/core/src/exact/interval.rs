use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::BigRat;

/// Closed interval with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRat,
    pub hi: BigRat,
}

impl Interval {
    pub fn new(lo: BigRat, hi: BigRat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(q: BigRat) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRat) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Interval::point(BigRat::one());
        }
        let lo_p = num_traits::pow(self.lo.clone(), e as usize);
        let hi_p = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 || !self.lo.is_negative() {
            Interval::new(lo_p, hi_p)
        } else if !self.hi.is_positive() {
            Interval::new(hi_p, lo_p)
        } else {
            Interval::new(BigRat::zero(), lo_p.max(hi_p))
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

/// Encloses `sum coeff * prod x_k^e_k` over a box of intervals.
pub fn eval_terms(terms: &[(Vec<u32>, BigRat)], boxes: &[Interval]) -> Interval {
    let mut acc = Interval::point(BigRat::zero());
    for (exps, coeff) in terms {
        let mut term = Interval::point(coeff.clone());
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = &term * &boxes[k].pow(e);
            }
        }
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn even_power_straddling_zero() {
        let i = Interval::new(int(-2), int(1));
        assert_eq!(i.pow(2), Interval::new(int(0), int(4)));
        assert_eq!(i.pow(3), Interval::new(int(-8), int(1)));
    }

    #[test]
    fn encloses_polynomial() {
        // x*y - x on [1,2] x [1/2, 1]
        let terms = vec![(vec![1, 1], int(1)), (vec![1, 0], int(-1))];
        let b = [Interval::new(int(1), int(2)), Interval::new(rat(1, 2), int(1))];
        let e = eval_terms(&terms, &b);
        assert!(e.contains(&rat(-1, 2)) && e.contains(&int(0)));
        assert!(e.lo >= int(-2) && e.hi <= int(1));
    }
}
