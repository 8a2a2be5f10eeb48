use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::algebraic::AlgebraicNumber;
use super::rational::BigRat;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    /// `p` is made square-free first.
    pub fn new(p: &UniPoly) -> Self {
        let p0 = p.square_free();
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) > 0 {
            chain.push(p0.derivative().content_free());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem_scaled(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-r);
            }
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &UniPoly {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign variations of the chain at `x`, zeros skipped.
    pub fn variations_at(&self, x: &BigRat) -> usize {
        let signs = self.chain.iter().map(|p| p.sign_at(x));
        count_variations(signs)
    }

    /// Sign variations at minus or plus infinity.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs = self.chain.iter().map(|p| {
            let lead = p.leading().map_or(Ordering::Equal, |l| l.cmp(&BigInt::zero()));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                lead.reverse()
            } else {
                lead
            }
        });
        count_variations(signs)
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct roots in the open interval `(lo, hi)`; neither
    /// endpoint may be a root.
    pub fn count_open(&self, lo: &BigRat, hi: &BigRat) -> usize {
        debug_assert!(lo < hi);
        debug_assert!(self.chain[0].sign_at(lo) != Ordering::Equal);
        debug_assert!(self.chain[0].sign_at(hi) != Ordering::Equal);
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct roots in the closed interval `[lo, hi]`, any
    /// endpoints allowed. Rational endpoint roots are deflated away before
    /// the open count.
    pub fn count_closed(&self, lo: &BigRat, hi: &BigRat) -> usize {
        let p = &self.chain[0];
        if lo == hi {
            return usize::from(p.sign_at(lo) == Ordering::Equal);
        }
        let mut count = 0;
        let mut deflated = p.clone();
        for end in [lo, hi] {
            if p.sign_at(end) == Ordering::Equal {
                count += 1;
                deflated = deflated.quotient_primitive(&UniPoly::linear_root(end));
            }
        }
        if count == 0 {
            return self.count_open(lo, hi);
        }
        if deflated.degree().unwrap_or(0) == 0 {
            return count;
        }
        count + SturmChain::new(&deflated).count_open(lo, hi)
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Cauchy bound: every root has absolute value strictly less than the
/// returned integer.
pub fn root_bound(p: &UniPoly) -> BigRat {
    let lead = p.leading().expect("root bound of the zero polynomial").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let q = BigRat::new(max, lead);
    q.ceil() + BigRat::one()
}

/// All distinct real roots of `p` in increasing order, each with a disjoint
/// isolating interval. Rational roots come back as point intervals.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "cannot isolate the roots of the zero polynomial".into(),
        ));
    }
    let sq = p.square_free();
    if sq.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sq);
    let bound = root_bound(&sq);
    let intervals = isolate_in(&chain, &-&bound, &bound);
    Ok(intervals
        .into_iter()
        .map(|(lo, hi)| AlgebraicNumber::from_isolating(sq.clone(), lo, hi))
        .collect())
}

/// Isolating intervals for the roots of the chain's polynomial in the open
/// interval `(lo, hi)` (non-root endpoints), sorted. Point intervals mark
/// rational roots hit by bisection.
pub(crate) fn isolate_in(chain: &SturmChain, lo: &BigRat, hi: &BigRat) -> Vec<(BigRat, BigRat)> {
    let p = chain.polynomial();
    let two = BigRat::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_open(lo, hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => continue,
            1 => {
                out.push((a, b));
                continue;
            }
            _ => {}
        }
        let mid = (&a + &b) / &two;
        if p.sign_at(&mid) == Ordering::Equal {
            let mut delta = (&b - &a) / BigRat::from_integer(BigInt::from(4));
            loop {
                let l = &mid - &delta;
                let r = &mid + &delta;
                if p.sign_at(&l) != Ordering::Equal
                    && p.sign_at(&r) != Ordering::Equal
                    && chain.count_open(&l, &r) == 1
                {
                    out.push((mid.clone(), mid.clone()));
                    let nl = chain.count_open(&a, &l);
                    let nr = chain.count_open(&r, &b);
                    stack.push((a, l, nl));
                    stack.push((r, b, nr));
                    break;
                }
                delta /= &two;
            }
        } else {
            let nl = chain.count_open(&a, &mid);
            stack.push((mid.clone(), b, n - nl));
            stack.push((a, mid, nl));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Number of distinct real roots of `p` (zero polynomial excluded).
pub fn count_real_roots(p: &UniPoly) -> usize {
    if p.is_zero() {
        return 0;
    }
    SturmChain::new(p).count_all()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[-1, 0, 1]);
        let c = SturmChain::new(&f);
        assert_eq!(c.count_all(), 2);
        assert_eq!(c.count_open(&int(0), &int(2)), 1);
        assert_eq!(c.count_closed(&int(-1), &int(1)), 2);
        assert_eq!(c.count_closed(&int(1), &int(3)), 1);
        assert_eq!(c.count_closed(&rat(1, 2), &rat(1, 2)), 0);
    }

    #[test]
    fn tribonacci_root() {
        let roots = isolate_real_roots(&p(&[-1, -1, -1, 1])).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].approx() - 1.839_286_755_214_161).abs() < 1e-12);
    }

    #[test]
    fn rational_roots_are_points() {
        let roots = isolate_real_roots(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].as_rational(), Some(int(-1)));
        assert_eq!(roots[1].as_rational(), Some(int(1)));
        // a root sitting on the first bisection point
        let roots = isolate_real_roots(&p(&[0, -1, 0, 1])).unwrap();
        let r: Vec<_> = roots.iter().map(|r| r.as_rational().unwrap()).collect();
        assert_eq!(r, vec![int(-1), int(0), int(1)]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            isolate_real_roots(&UniPoly::zero()),
            Err(Error::InvalidInput(_))
        ));
        assert!(isolate_real_roots(&p(&[5])).unwrap().is_empty());
    }

    #[test]
    fn repeated_roots_collapse() {
        // (x - 2)^3 (x^2 - 3)
        let f = &p(&[-2, 1]).pow(3) * &p(&[-3, 0, 1]);
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[2].as_rational(), Some(int(2)));
        assert!((roots[0].approx() + 3f64.sqrt()).abs() < 1e-12);
    }
}
