use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{eval_terms, Interval};
use super::quotient::QuotientRing;
use super::rational::{simplest_between, to_f64, to_sig_digits, BigRat};
use super::roots::{isolate_real_roots, root_bound, SturmChain};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// A real algebraic number: a square-free integer polynomial together with
/// a rational interval holding exactly one of its roots.
///
/// Either `lo == hi` (the number is that rational, and `defining` is the
/// linear polynomial for it) or `lo < hi`, neither endpoint is a root, and
/// the open interval contains exactly one root. `approx` is advisory.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    defining: UniPoly,
    lo: BigRat,
    hi: BigRat,
    approx: f64,
}

const REFINE_CAP: usize = 100_000;

impl AlgebraicNumber {
    pub fn from_rational(q: BigRat) -> Self {
        AlgebraicNumber {
            defining: UniPoly::linear_root(&q),
            approx: to_f64(&q),
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRat::from_integer(BigInt::from(n)))
    }

    /// `defining` must be square-free with exactly one root in `(lo, hi)`
    /// and none at the endpoints, or `lo == hi` a root.
    pub(crate) fn from_isolating(defining: UniPoly, lo: BigRat, hi: BigRat) -> Self {
        if lo == hi {
            return Self::from_rational(lo);
        }
        let mut x = AlgebraicNumber {
            defining,
            lo,
            hi,
            approx: 0.0,
        };
        // tighten to double precision; a rational root gets caught by the
        // simplest-fraction probe once the interval is narrow
        let mut scale = x.lo.abs().max(x.hi.abs());
        if scale < BigRat::one() {
            scale = BigRat::one();
        }
        let target = scale / BigRat::from_integer(BigInt::one() << 64u32);
        while x.lo != x.hi && x.width() > target {
            x.refine_once();
        }
        if x.lo != x.hi {
            let q = simplest_between(&x.lo, &x.hi);
            if x.defining.sign_at(&q) == Ordering::Equal {
                return Self::from_rational(q);
            }
            x.approx = to_f64(&((&x.lo + &x.hi) / BigRat::from_integer(BigInt::from(2))));
            if x.defining.degree() == Some(1) {
                let q = -BigRat::new(x.defining.coeff(0), x.defining.coeff(1));
                return Self::from_rational(q);
            }
            x
        } else {
            Self::from_rational(x.lo)
        }
    }

    /// Validating constructor for externally supplied data (certificates).
    pub fn from_parts(defining: UniPoly, lo: BigRat, hi: BigRat) -> Result<Self> {
        if defining.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput(
                "defining polynomial must be nonconstant".into(),
            ));
        }
        if lo > hi {
            return Err(Error::InvalidInput("interval endpoints out of order".into()));
        }
        if lo == hi {
            if defining.sign_at(&lo) != Ordering::Equal {
                return Err(Error::InvalidInput(
                    "point interval is not a root of the defining polynomial".into(),
                ));
            }
            return Ok(Self::from_rational(lo));
        }
        let sq = defining.square_free();
        if sq.sign_at(&lo) == Ordering::Equal || sq.sign_at(&hi) == Ordering::Equal {
            return Err(Error::InvalidInput("interval endpoint is a root".into()));
        }
        let count = SturmChain::new(&sq).count_open(&lo, &hi);
        if count != 1 {
            return Err(Error::InvalidInput(format!(
                "interval holds {count} roots of the defining polynomial, expected 1"
            )));
        }
        Ok(Self::from_isolating(sq, lo, hi))
    }

    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn interval(&self) -> (&BigRat, &BigRat) {
        (&self.lo, &self.hi)
    }

    pub fn enclosure(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn as_rational(&self) -> Option<BigRat> {
        (self.lo == self.hi).then(|| self.lo.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    /// One bisection step; collapses to a point if the midpoint is the root.
    fn refine_once(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRat::from_integer(BigInt::from(2));
        match self.defining.sign_at(&mid) {
            Ordering::Equal => {
                self.defining = UniPoly::linear_root(&mid);
                self.approx = to_f64(&mid);
                self.lo = mid.clone();
                self.hi = mid;
            }
            s if s == self.defining.sign_at(&self.lo) => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Same number, isolating interval narrower than `eps`.
    pub fn refine(&self, eps: &BigRat) -> Self {
        assert!(eps.is_positive(), "refinement width must be positive");
        let mut x = self.clone();
        while x.lo != x.hi && &x.width() >= eps {
            x.refine_once();
        }
        x
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRat) -> Ordering {
        if self.lo == self.hi {
            return self.lo.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        match self.defining.sign_at(q) {
            Ordering::Equal => Ordering::Equal,
            s if s == self.defining.sign_at(&self.lo) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    pub fn sign(&self) -> Ordering {
        self.cmp_rational(&BigRat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    /// Exact comparison of two algebraic numbers.
    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(&q).reverse();
        }
        if self.hi <= other.lo {
            return Ordering::Less;
        }
        if other.hi <= self.lo {
            return Ordering::Greater;
        }
        let g = self.defining.gcd(&other.defining);
        if g.degree().unwrap_or(0) > 0 {
            let lo = (&self.lo).max(&other.lo);
            let hi = (&self.hi).min(&other.hi);
            if lo < hi && SturmChain::new(&g).count_closed(lo, hi) > 0 {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        for _ in 0..REFINE_CAP {
            a.refine_once();
            b.refine_once();
            if let Some(q) = a.as_rational() {
                return b.cmp_rational(&q).reverse();
            }
            if let Some(q) = b.as_rational() {
                return a.cmp_rational(&q);
            }
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
        }
        panic!("distinct algebraic numbers failed to separate");
    }

    /// Evaluates `sum coeff * prod point[k]^e_k` exactly.
    ///
    /// The defining polynomial comes from the first linear dependency among
    /// powers of the value in the tensor quotient ring of the inputs; the
    /// isolating interval from interval enclosures refined until the
    /// defining polynomial has a single root inside.
    pub fn evaluate(terms: &[(Vec<u32>, BigRat)], point: &[AlgebraicNumber]) -> Self {
        // merge repeated inputs so x*x does not square the ring dimension
        let mut distinct: Vec<AlgebraicNumber> = Vec::new();
        let mut slot = Vec::with_capacity(point.len());
        for p in point {
            match distinct.iter().position(|d| d.same_root(p)) {
                Some(i) => slot.push(i),
                None => {
                    slot.push(distinct.len());
                    distinct.push(p.clone());
                }
            }
        }
        let mut merged: Vec<(Vec<u32>, BigRat)> = Vec::new();
        for (exps, c) in terms {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; distinct.len()];
            for (k, &x) in exps.iter().enumerate() {
                e[slot[k]] += x;
            }
            match merged.iter_mut().find(|(m, _)| *m == e) {
                Some((_, acc)) => *acc += c,
                None => merged.push((e, c.clone())),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());

        if distinct.iter().all(AlgebraicNumber::is_rational) {
            let boxes: Vec<Interval> = distinct.iter().map(|d| d.enclosure()).collect();
            return Self::from_rational(eval_terms(&merged, &boxes).lo);
        }

        let reducers: Vec<UniPoly> = distinct.iter().map(|d| d.defining.clone()).collect();
        let mut ring = QuotientRing::new(&reducers);
        let gamma = ring.element(&merged);
        let defining = ring.annihilator(&gamma).square_free();
        Self::isolate_value(defining, &merged, distinct)
    }

    fn isolate_value(
        defining: UniPoly,
        terms: &[(Vec<u32>, BigRat)],
        mut inputs: Vec<AlgebraicNumber>,
    ) -> Self {
        if defining.degree() == Some(1) {
            let q = -BigRat::new(defining.coeff(0), defining.coeff(1));
            return Self::from_rational(q);
        }
        let chain = SturmChain::new(&defining);
        let eighth = BigRat::new(BigInt::one(), BigInt::from(8));
        for _ in 0..REFINE_CAP {
            let boxes: Vec<Interval> = inputs.iter().map(|d| d.enclosure()).collect();
            let enc = eval_terms(terms, &boxes);
            let mut pad = enc.width() * &eighth;
            if pad.is_zero() {
                // inputs all collapsed to rationals during refinement
                return Self::from_rational(enc.lo);
            }
            let (lo, hi) = loop {
                let lo = &enc.lo - &pad;
                let hi = &enc.hi + &pad;
                if defining.sign_at(&lo) != Ordering::Equal
                    && defining.sign_at(&hi) != Ordering::Equal
                {
                    break (lo, hi);
                }
                pad *= BigRat::new(BigInt::from(3), BigInt::from(4));
            };
            match chain.count_open(&lo, &hi) {
                0 => panic!("interval enclosure lost the root of {defining}"),
                1 => return Self::from_isolating(defining, lo, hi),
                _ => {
                    for x in inputs.iter_mut() {
                        x.refine_once();
                        x.refine_once();
                    }
                }
            }
        }
        panic!("failed to isolate an algebraic value");
    }

    /// True when both denote the same real number, decided exactly.
    fn same_root(&self, other: &Self) -> bool {
        if self.is_rational() || other.is_rational() {
            return match (self.as_rational(), other.as_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            };
        }
        self.defining == other.defining && self.lo < other.hi && other.lo < self.hi && {
            let lo = (&self.lo).max(&other.lo);
            let hi = (&self.hi).min(&other.hi);
            SturmChain::new(&self.defining).count_closed(lo, hi) > 0
        }
    }

    /// `p(x)` for a univariate polynomial with rational coefficients,
    /// constant term first.
    pub fn eval_univariate(coeffs: &[BigRat], x: &AlgebraicNumber) -> Self {
        let terms: Vec<(Vec<u32>, BigRat)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c.clone()))
            .collect();
        Self::evaluate(&terms, std::slice::from_ref(x))
    }

    pub fn add(&self, other: &Self) -> Self {
        let one = BigRat::one();
        Self::evaluate(
            &[(vec![1, 0], one.clone()), (vec![0, 1], one)],
            &[self.clone(), other.clone()],
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::evaluate(
            &[(vec![1, 0], BigRat::one()), (vec![0, 1], -BigRat::one())],
            &[self.clone(), other.clone()],
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::evaluate(&[(vec![1, 1], BigRat::one())], &[self.clone(), other.clone()])
    }

    pub fn add_rational(&self, q: &BigRat) -> Self {
        Self::eval_univariate(&[q.clone(), BigRat::one()], self)
    }

    pub fn mul_rational(&self, q: &BigRat) -> Self {
        Self::eval_univariate(&[BigRat::zero(), q.clone()], self)
    }

    pub fn neg(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return Self::from_rational(-q);
        }
        AlgebraicNumber {
            defining: self.defining.negate_variable().primitive(),
            lo: -&self.hi,
            hi: -&self.lo,
            approx: -self.approx,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let mut x = self.clone();
        while x.lo.is_negative() == x.hi.is_positive() || x.lo.is_zero() || x.hi.is_zero() {
            x.refine_once();
            if let Some(q) = x.as_rational() {
                return Ok(Self::from_rational(q.recip()));
            }
        }
        let defining = x.defining.reversed().square_free();
        Ok(Self::from_isolating(defining, x.hi.recip(), x.lo.recip()))
    }

    /// Real cube root. Cubing is a monotone bijection of the reals, so the
    /// cube root sits at the same index among the real roots of `D(x^3)`
    /// as this number does among the real roots of `D`.
    pub fn cbrt(&self) -> Self {
        let d = self.defining.square_free();
        let bound = root_bound(&d);
        let index = SturmChain::new(&d).count_closed(&-&bound, &self.hi) - 1;
        let cubed = d.compose_power(3);
        let roots = isolate_real_roots(&cubed).expect("nonzero polynomial");
        roots
            .into_iter()
            .nth(index)
            .expect("cube roots correspond to real roots")
    }

    /// Decimal rendering to `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        if let Some(q) = self.as_rational() {
            return to_sig_digits(&q, sig);
        }
        let mag = BigRat::from_float(self.approx.abs().max(1e-300)).unwrap_or_else(BigRat::one);
        let eps = mag / BigRat::from_integer(BigInt::from(10u32).pow(sig as u32 + 6));
        let x = self.refine(&eps);
        let mid = (&x.lo + &x.hi) / BigRat::from_integer(BigInt::from(2));
        to_sig_digits(&mid, sig)
    }

    /// Closed form for rationals and quadratic irrationals, e.g.
    /// `(398 - 68*sqrt(34))/27`.
    pub fn radical_form(&self) -> Option<String> {
        if let Some(q) = self.as_rational() {
            return Some(if q.is_integer() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            });
        }
        if self.defining.degree() != Some(2) {
            return None;
        }
        let (c, b, a) = (
            self.defining.coeff(0),
            self.defining.coeff(1),
            self.defining.coeff(2),
        );
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        if !disc.is_positive() {
            return None;
        }
        let (k, r) = split_square(&disc);
        // root = (-b +- k sqrt(r)) / (2a)
        let vertex = BigRat::new(-b.clone(), BigInt::from(2) * &a);
        let plus = self.cmp_rational(&vertex) == Ordering::Greater;
        let mut num = -b;
        let mut rad = k;
        let mut den = BigInt::from(2) * a;
        if den.is_negative() {
            num = -num;
            den = -den;
            rad = -rad;
        }
        let rad = if plus { rad } else { -rad };
        let g = num.gcd(&rad).gcd(&den);
        let (num, rad, den) = (num / &g, rad / &g, den / &g);
        let sqrt = if rad.abs().is_one() {
            format!("sqrt({r})")
        } else {
            format!("{}*sqrt({r})", rad.abs())
        };
        let body = if num.is_zero() {
            if rad.is_negative() {
                format!("-{sqrt}")
            } else {
                sqrt
            }
        } else {
            let op = if rad.is_negative() { "-" } else { "+" };
            format!("{num} {op} {sqrt}")
        };
        Some(if den.is_one() {
            body
        } else if num.is_zero() {
            format!("{body}/{den}")
        } else {
            format!("({body})/{den}")
        })
    }
}

/// `n = k^2 * r` with square factors of primes below 10^4 pulled out.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut r = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p < limit {
        let p2 = &p * &p;
        if p2 > r {
            break;
        }
        while (&r % &p2).is_zero() {
            r /= &p2;
            k *= &p;
        }
        p += 1;
    }
    (k, r)
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exact_cmp(other)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radical_form() {
            Some(r) => write!(f, "{r}"),
            None => write!(
                f,
                "root of {} in ({}, {}) ~ {}",
                self.defining,
                self.lo,
                self.hi,
                self.to_decimal(10)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn root_in(c: &[i64], lo: BigRat, hi: BigRat) -> AlgebraicNumber {
        AlgebraicNumber::from_parts(UniPoly::from_i64s(c), lo, hi).unwrap()
    }

    fn sqrt2() -> AlgebraicNumber {
        root_in(&[-2, 0, 1], int(1), int(2))
    }

    fn tribonacci() -> AlgebraicNumber {
        root_in(&[-1, -1, -1, 1], int(1), int(2))
    }

    #[test]
    fn refine_sqrt2() {
        let r = sqrt2().refine(&rat(1, 100));
        let (lo, hi) = r.interval();
        assert!(hi - lo < rat(1, 100));
        assert!(lo >= &rat(141, 100) && hi <= &rat(142, 100));
    }

    #[test]
    fn refine_tribonacci_and_cubic() {
        let eps = rat(1, 10_000);
        let a = tribonacci().refine(&eps);
        assert!(a.interval().0 <= &rat(18393, 10_000) && a.interval().1 >= &rat(18392, 10_000));
        let b = root_in(&[-1, -3, -2, 1], int(3), int(4)).refine(&eps);
        assert!((b.approx() - 3.0796).abs() < 1e-4);
        assert!(b.width() < eps);
    }

    #[test]
    fn compare_with_rationals() {
        assert_eq!(sqrt2().cmp_rational(&rat(3, 2)), Ordering::Less);
        assert_eq!(tribonacci().cmp_rational(&int(2)), Ordering::Less);
        assert_eq!(sqrt2().mul(&sqrt2()).cmp_rational(&int(2)), Ordering::Equal);
    }

    #[test]
    fn refinement_preserves_comparisons() {
        let x = tribonacci();
        let y = x.refine(&rat(1, 1 << 30));
        for probe in [rat(18, 10), rat(184, 100), rat(1839, 1000), rat(18393, 10000), int(2)] {
            assert_eq!(x.cmp_rational(&probe), y.cmp_rational(&probe));
        }
    }

    #[test]
    fn arithmetic_roundtrips() {
        let two = sqrt2().mul(&sqrt2());
        assert_eq!(two.as_rational(), Some(int(2)));
        let zero = sqrt2().sub(&sqrt2());
        assert!(zero.is_zero());
        let a = tribonacci();
        let sq = a.mul(&a);
        assert!((sq.approx() - 3.382_975_8).abs() < 1e-6);
        assert_eq!(a.neg().add(&a).as_rational(), Some(int(0)));
        let inv = a.inv().unwrap();
        assert_eq!(inv.mul(&a).as_rational(), Some(int(1)));
        assert!(AlgebraicNumber::from_integer(0).inv().is_err());
    }

    #[test]
    fn sum_vanishes_at_approximations() {
        let x = sqrt2();
        let y = tribonacci();
        let s = x.add(&y);
        let approx = x.approx() + y.approx();
        let val: f64 = s
            .defining()
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * approx + to_f64(&BigRat::from_integer(c.clone())));
        let scale: f64 = s
            .defining()
            .coeffs()
            .iter()
            .map(|c| to_f64(&BigRat::from_integer(c.abs())))
            .sum::<f64>()
            * approx.abs().max(1.0).powi(s.defining().degree().unwrap() as i32);
        assert!(val.abs() <= 1e-12 * scale);
    }

    #[test]
    fn distinct_and_equal_comparisons() {
        let a = tribonacci();
        let b = root_in(&[-1, -3, -2, 1], int(3), int(4));
        assert!(a < b);
        let a2 = a.mul_rational(&int(2)).mul_rational(&rat(1, 2));
        assert_eq!(a.exact_cmp(&a2), Ordering::Equal);
    }

    #[test]
    fn cube_roots() {
        let eight = AlgebraicNumber::from_integer(-8);
        assert_eq!(eight.cbrt().as_rational(), Some(int(-2)));
        let c = sqrt2().cbrt();
        assert!((c.approx() - 2f64.sqrt().cbrt()).abs() < 1e-12);
        let roots = isolate_real_roots(&UniPoly::from_i64s(&[-1, 0, 1])).unwrap();
        let neg = roots[0].mul_rational(&int(5));
        assert_eq!(neg.cbrt().approx(), (-5f64).cbrt());
    }

    #[test]
    fn radical_rendering() {
        let m = root_in(&[44, -796, 27], int(0), int(1));
        assert_eq!(m.radical_form().unwrap(), "(398 - 68*sqrt(34))/27");
        assert_eq!(sqrt2().radical_form().unwrap(), "sqrt(2)");
        assert_eq!(sqrt2().neg().radical_form().unwrap(), "-sqrt(2)");
        assert_eq!(AlgebraicNumber::from_rational(rat(3, 4)).to_string(), "3/4");
        assert!(tribonacci().radical_form().is_none());
    }

    #[test]
    fn decimals() {
        assert_eq!(sqrt2().to_decimal(10), "1.414213562");
        assert_eq!(tribonacci().to_decimal(5), "1.8393");
    }

    #[test]
    fn invalid_parts_rejected() {
        let p = UniPoly::from_i64s(&[-1, 0, 1]);
        assert!(AlgebraicNumber::from_parts(p.clone(), int(-2), int(2)).is_err());
        assert!(AlgebraicNumber::from_parts(p.clone(), int(1), int(2)).is_err());
        assert!(AlgebraicNumber::from_parts(p, int(1), int(1)).is_ok());
    }
}
