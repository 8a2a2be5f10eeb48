use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{BigRat, UniPoly};

/// Exponent tuple ordered graded-lexicographically (total degree first,
/// then earlier variables dominate).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with integer coefficients over a fixed, ordered list of
/// variable names. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(vars.iter().map(|v| v.to_string()).collect())
    }

    pub(crate) fn zero_owned(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c.into());
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?}")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigInt::one());
        Ok(p)
    }

    /// All variables of `vars` as polynomials, in order.
    pub fn vars_of(vars: &[&str]) -> Vec<Self> {
        vars.iter()
            .map(|v| Self::var(vars, v).expect("variable is listed"))
            .collect()
    }

    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::InvalidInput(format!(
                    "exponent tuple of length {} for {} variables",
                    e.len(),
                    vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded lexicographic descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn check_same_vars(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variable lists"
        );
    }

    fn check_arity<T>(&self, point: &[T]) -> Result<()> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        Ok(())
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        self.check_arity(point)?;
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= Pow::pow(x, e);
                }
            }
            total += t;
        }
        Ok(total)
    }

    pub fn eval_rat(&self, point: &[BigRat]) -> Result<BigRat> {
        self.check_arity(point)?;
        let mut total = BigRat::zero();
        for (m, c) in &self.terms {
            let mut t = BigRat::from_integer(c.clone());
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= Pow::pow(x, e);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// `(exponents, coefficient)` pairs with rational coefficients, the form
    /// consumed by interval and algebraic evaluation.
    pub fn rational_terms(&self) -> Vec<(Vec<u32>, BigRat)> {
        self.terms()
            .map(|(e, c)| (e.to_vec(), BigRat::from_integer(c.clone())))
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut out = Self::constant(&vars, 1);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero_owned(self.vars.clone());
        if k.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * k);
        }
        out
    }

    /// Replaces every variable by a polynomial. All targets must share one
    /// variable list, which becomes the variable list of the result.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> Result<Self> {
        let target_vars = match bindings.values().next() {
            Some(p) => p.vars.clone(),
            None => Vec::new(),
        };
        if bindings.values().any(|p| p.vars != target_vars) {
            return Err(Error::InvalidInput(
                "substitution targets use different variable lists".into(),
            ));
        }
        let mut images = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            match bindings.get(v) {
                Some(p) => images.push(Some(p)),
                None if used => {
                    return Err(Error::InvalidInput(format!("unbound variable {v:?}")))
                }
                None => images.push(None),
            }
        }
        let target: Vec<&str> = target_vars.iter().map(String::as_str).collect();
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].expect("used variables are bound");
                let power = cache.entry((i, e)).or_insert_with(|| img.pow(e));
                t = &t * power;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(exps, c * BigInt::from(e));
        }
        out
    }

    /// Coefficients of the powers of `var`, lowest first, as polynomials
    /// over the same variable list (not involving `var`).
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let n = self.degree_in(var).map_or(0, |d| d as usize + 1);
        let mut out = vec![Self::zero_owned(self.vars.clone()); n];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = std::mem::replace(&mut exps[var], 0) as usize;
            out[e].add_term(exps, c.clone());
        }
        out
    }

    /// The polynomial as a univariate one when at most `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let e = m.0[var] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Same polynomial over a superset (or reordering) of its variables.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::InvalidInput(format!("variable {v:?} not in target list")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Canonical rendering: terms in grlex-descending order, `*` between
    /// factors, `^` for powers, e.g. `x^3 + 2*x^2*y - z^3`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = MultiPoly::zero_owned(self.vars.clone());
        // monomial product adds exponents
        #[allow(clippy::suspicious_arithmetic_impl)]
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn p(text: &str) -> MultiPoly {
        MultiPoly::parse(text, &XYZ).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn tribonacci() -> MultiPoly {
        p("x^3+2x^2y+x^2z+2xy^2-2xyz-xz^2+2y^3-2yz^2+z^3")
    }

    #[test]
    fn evaluates_tribonacci_invariant() {
        let pt = tribonacci();
        assert_eq!(pt.eval(&ints(&[0, 0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(pt.eval(&ints(&[1, 2, 4])).unwrap(), BigInt::from(1));
        assert_eq!(pt.eval(&ints(&[0, 0, 0])).unwrap(), BigInt::from(0));
        assert!(pt.eval(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(
            tribonacci().render(),
            "x^3 + 2*x^2*y + x^2*z + 2*x*y^2 - 2*x*y*z - x*z^2 + 2*y^3 - 2*y*z^2 + z^3"
        );
        assert_eq!(p("-y + 3 - x^2").render(), "-x^2 - y + 3");
        assert_eq!(p("x - x").render(), "0");
    }

    #[test]
    fn substitution() {
        let pt = tribonacci();
        let mut shift = HashMap::new();
        shift.insert("x".to_string(), p("y"));
        shift.insert("y".to_string(), p("z"));
        shift.insert("z".to_string(), p("x + y + z"));
        assert_eq!(pt.substitute(&shift).unwrap(), pt);

        let sq = MultiPoly::parse("x^2", &["x"]).unwrap();
        let mut id = HashMap::new();
        id.insert("x".to_string(), MultiPoly::parse("x", &["x"]).unwrap());
        assert_eq!(sq.substitute(&id).unwrap(), sq);

        let mut partial = HashMap::new();
        partial.insert("x".to_string(), p("y"));
        assert!(matches!(pt.substitute(&partial), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn pab_backward_invariance() {
        let pab = p("x^3 + 6*x^2*y + 2*x^2*z + 11*x*y^2 + 3*x*y*z - 3*x*z^2 + 7*y^3 + y^2*z - 4*y*z^2 + z^3");
        let mut back = HashMap::new();
        back.insert("x".to_string(), p("z - 3*x - 2*y"));
        back.insert("y".to_string(), p("x"));
        back.insert("z".to_string(), p("y"));
        assert_eq!(pab.substitute(&back).unwrap(), pab);
    }

    #[test]
    fn derivative_and_coefficients() {
        let f = p("x^2*y + 3*x*y^2 - y + 5");
        assert_eq!(f.derivative(0), p("2*x*y + 3*y^2"));
        let c = f.coeffs_in(0);
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], p("-y + 5"));
        assert_eq!(c[1], p("3*y^2"));
        assert_eq!(c[2], p("y"));
        assert!(f.to_univariate(1).is_none());
        assert_eq!(
            p("y^2 - 2").to_univariate(1).unwrap(),
            UniPoly::from_i64s(&[-2, 0, 1])
        );
    }

    #[test]
    fn homogeneity() {
        assert!(tribonacci().is_homogeneous());
        assert!(!p("x^2 + y").is_homogeneous());
        assert_eq!(tribonacci().total_degree(), Some(3));
    }

    #[test]
    fn reorders_variables() {
        let f = MultiPoly::parse("t^2 + s", &["t", "s"]).unwrap();
        let g = f.with_vars(&["s", "t"]).unwrap();
        assert_eq!(g.render(), "t^2 + s");
        assert_eq!(g.vars(), &["s".to_string(), "t".to_string()]);
    }
}
