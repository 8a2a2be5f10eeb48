//! Recurrences `a(n) = c1 a(n-1) + ... + cd a(n-d)` with `cd = (-1)^(d+1)`,
//! their invariant polynomials, shift maps and order-3 admissibility.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{isolate_real_roots, AlgebraicNumber, BigRat, UniPoly};
use crate::mpoly::{MultiPoly, PolyMatrix};

/// A window `(a(n), .., a(n+d-1))`, oldest entry first.
pub type SolutionTuple = Vec<BigInt>;

/// Renders a window as `(0, 0, 1)`.
pub fn format_tuple(t: &[BigInt]) -> String {
    let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<BigInt>,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `(c1, .., cd)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Variable names of the window: `x, y, z` up to order 3, else
    /// `x1 .. xd`.
    pub fn var_names(&self) -> Vec<String> {
        let d = self.order();
        if d <= 3 {
            ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=d).map(|i| format!("x{i}")).collect()
        }
    }

    /// `(a, b)` of an order-3 recurrence `(a, b, 1)`.
    pub fn ab(&self) -> Option<(BigInt, BigInt)> {
        (self.order() == 3).then(|| (self.coeffs[0].clone(), self.coeffs[1].clone()))
    }

    /// `X^d - c1 X^(d-1) - .. - cd`.
    pub fn characteristic(&self) -> UniPoly {
        let d = self.order();
        let mut c = vec![BigInt::zero(); d + 1];
        c[d] = BigInt::one();
        for (i, ci) in self.coeffs.iter().enumerate() {
            c[d - 1 - i] = -ci;
        }
        UniPoly::new(c)
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn validate(coeffs: &[BigInt]) -> Result<Recurrence> {
    let d = coeffs.len();
    if d < 2 {
        return Err(Error::InvalidInput(format!(
            "a recurrence needs at least 2 coefficients, got {d}"
        )));
    }
    let required = if d % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    if coeffs[d - 1] != required {
        return Err(Error::Constraint(format!(
            "last coefficient must be {required} for order {d} (got {})",
            coeffs[d - 1]
        )));
    }
    if coeffs[..d - 1].iter().all(Zero::is_zero) {
        return Err(Error::Constraint(
            "at least one of the leading coefficients must be nonzero".into(),
        ));
    }
    Ok(Recurrence {
        coeffs: coeffs.to_vec(),
    })
}

/// Convenience for small literal coefficient lists.
pub fn validate_i64(coeffs: &[i64]) -> Result<Recurrence> {
    validate(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}

/// Row `k` is the window shifted `k` times, written in the free variables.
pub fn window_matrix(rec: &Recurrence) -> PolyMatrix {
    let names = rec.var_names();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut row = MultiPoly::vars_of(&vars);
    let mut rows = Vec::with_capacity(rec.order());
    for _ in 0..rec.order() {
        rows.push(row.clone());
        row = forward_symbolic(rec, &row);
    }
    PolyMatrix::from_rows(rows).expect("square window matrix")
}

fn forward_symbolic(rec: &Recurrence, window: &[MultiPoly]) -> Vec<MultiPoly> {
    let d = rec.order();
    let mut acc = window[d - 1].scale(&rec.coeffs[0]);
    for i in 1..d {
        acc = &acc + &window[d - 1 - i].scale(&rec.coeffs[i]);
    }
    let mut next = window[1..].to_vec();
    next.push(acc);
    next
}

/// `P = sign * det(window matrix)`, normalized by `P(0, .., 0, 1) = 1`.
pub fn build_invariant(rec: &Recurrence) -> MultiPoly {
    let det = window_matrix(rec)
        .determinant()
        .expect("window matrix is square");
    let mut seed = vec![BigInt::zero(); rec.order()];
    seed[rec.order() - 1] = BigInt::one();
    let v = det.eval(&seed).expect("seed has full arity");
    if v.is_one() {
        det
    } else {
        assert_eq!(v, -BigInt::one(), "window determinant at the seed must be +-1");
        -det
    }
}

pub fn forward(rec: &Recurrence, t: &[BigInt]) -> SolutionTuple {
    assert_eq!(t.len(), rec.order(), "window length must equal the order");
    let d = rec.order();
    let mut acc = &t[d - 1] * &rec.coeffs[0];
    for i in 1..d {
        acc += &t[d - 1 - i] * &rec.coeffs[i];
    }
    let mut out = t[1..].to_vec();
    out.push(acc);
    out
}

/// Inverse of [`forward`]: recovers `a(n-1)` from
/// `cd a(n-1) = a(n+d-1) - sum_{i<d} ci a(n+d-1-i)`, with `cd = +-1`.
pub fn backward(rec: &Recurrence, t: &[BigInt]) -> SolutionTuple {
    assert_eq!(t.len(), rec.order(), "window length must equal the order");
    let d = rec.order();
    let mut acc = t[d - 1].clone();
    for i in 1..d {
        acc -= &rec.coeffs[i - 1] * &t[d - 1 - i];
    }
    acc *= &rec.coeffs[d - 1];
    let mut out = Vec::with_capacity(d);
    out.push(acc);
    out.extend_from_slice(&t[..d - 1]);
    out
}

/// Variable bindings for `P o forward`.
pub fn forward_bindings(rec: &Recurrence) -> HashMap<String, MultiPoly> {
    let m = window_matrix(rec);
    rec.var_names()
        .into_iter()
        .zip(m.row(1).iter().cloned())
        .collect()
}

/// Variable bindings for `P o backward`.
pub fn backward_bindings(rec: &Recurrence) -> HashMap<String, MultiPoly> {
    let names = rec.var_names();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let v = MultiPoly::vars_of(&vars);
    let d = rec.order();
    let mut acc = v[d - 1].clone();
    for i in 1..d {
        acc = &acc - &v[d - 1 - i].scale(&rec.coeffs[i - 1]);
    }
    acc = acc.scale(&rec.coeffs[d - 1]);
    let mut images = vec![acc];
    images.extend_from_slice(&v[..d - 1]);
    names.into_iter().zip(images).collect()
}

/// `P - P o forward == 0`, decided symbolically.
pub fn check_invariance(rec: &Recurrence, p: &MultiPoly) -> bool {
    p.substitute(&forward_bindings(rec))
        .map(|q| &q - p)
        .is_ok_and(|diff| diff.is_zero())
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub irreducible: bool,
    /// A rational root of the characteristic polynomial, when one exists.
    pub rational_root: Option<BigInt>,
    /// Factorization text when reducible, e.g. `(X + 1)*(X^2 - 2*X - 1)`.
    pub factorization: Option<String>,
    pub dominant_root: Option<AlgebraicNumber>,
    pub dominant_ok: bool,
    pub reasons: Vec<String>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.irreducible && self.dominant_ok
    }
}

/// Order-3 admissibility: the characteristic polynomial `X^3 - aX^2 - bX - 1`
/// must be irreducible with a single largest root, real and above 1.
pub fn is_admissible(rec: &Recurrence) -> Result<AdmissibilityReport> {
    let (a, b) = rec.ab().ok_or_else(|| {
        Error::Unsupported(format!(
            "admissibility is only defined for order 3, got order {}",
            rec.order()
        ))
    })?;
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Unsupported(format!(
            "admissibility needs positive a and b, got a = {a}, b = {b}"
        )));
    }
    let chi = rec.characteristic();
    let mut reasons = Vec::new();

    // rational roots of a monic polynomial with constant term -1 are +-1
    let rational_root = [BigInt::one(), -BigInt::one()]
        .into_iter()
        .find(|r| chi.eval_int(r).is_zero());
    let irreducible = rational_root.is_none();
    let factorization = rational_root.as_ref().map(|r| {
        let linear = UniPoly::new(vec![-r, BigInt::one()]);
        let rest = chi.quotient_primitive(&linear);
        let text = format!("({})*({})", linear.render("X"), rest.render("X"));
        reasons.push(format!(
            "{} = {} is reducible over the rationals (rational root {r}; b = a + 2)",
            chi.render("X"),
            text
        ));
        text
    });

    let roots = isolate_real_roots(&chi)?;
    let alpha = roots.last().cloned();
    let mut dominant_ok = false;
    if let Some(alpha) = &alpha {
        if alpha.cmp_rational(&BigRat::one()) != Ordering::Greater {
            reasons.push(format!("largest real root {} is not greater than 1", alpha.to_decimal(10)));
        } else if roots.len() == 1 {
            // the complex pair has modulus alpha^(-1/2) < 1 < alpha since the
            // product of all roots is 1
            dominant_ok = true;
        } else {
            let lowest = roots[0].neg();
            if alpha.exact_cmp(&lowest) == Ordering::Greater {
                dominant_ok = true;
            } else {
                reasons.push("largest root is not strictly dominant in absolute value".into());
            }
        }
    } else {
        reasons.push("characteristic polynomial has no real root".into());
    }
    if !irreducible {
        dominant_ok = false;
    }
    Ok(AdmissibilityReport {
        irreducible,
        rational_root,
        factorization,
        dominant_root: alpha,
        dominant_ok,
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn trib() -> Recurrence {
        validate_i64(&[1, 1, 1]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_i64(&[1, 1, 1]).is_ok());
        assert!(validate_i64(&[5, 3, 1]).is_ok());
        match validate_i64(&[1, 1, 2]) {
            Err(Error::Constraint(msg)) => assert!(msg.contains("must be 1")),
            other => panic!("expected a constraint error, got {other:?}"),
        }
        assert!(matches!(validate_i64(&[3, 1]), Err(Error::Constraint(_))));
        assert!(validate_i64(&[3, -1]).is_ok());
        assert!(matches!(validate_i64(&[0, 0, 1]), Err(Error::Constraint(_))));
        assert!(matches!(validate_i64(&[1]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn window_matrices() {
        let render = |m: &PolyMatrix| -> Vec<String> {
            (0..m.rows())
                .flat_map(|r| m.row(r).iter().map(MultiPoly::render).collect::<Vec<_>>())
                .collect()
        };
        assert_eq!(
            render(&window_matrix(&trib())),
            ["x", "y", "z", "y", "z", "x + y + z", "z", "x + y + z", "x + 2*y + 2*z"]
        );
        assert_eq!(
            render(&window_matrix(&validate_i64(&[7, -1]).unwrap())),
            ["x", "y", "y", "-x + 7*y"]
        );
        assert_eq!(
            render(&window_matrix(&validate_i64(&[2, 3, 1]).unwrap())),
            ["x", "y", "z", "y", "z", "x + 3*y + 2*z", "z", "x + 3*y + 2*z", "2*x + 7*y + 7*z"]
        );
    }

    #[test]
    fn invariants_match_closed_forms() {
        assert_eq!(
            build_invariant(&trib()).render(),
            "x^3 + 2*x^2*y + x^2*z + 2*x*y^2 - 2*x*y*z - x*z^2 + 2*y^3 - 2*y*z^2 + z^3"
        );
        assert_eq!(
            build_invariant(&validate_i64(&[2, 3, 1]).unwrap()).render(),
            "x^3 + 6*x^2*y + 2*x^2*z + 11*x*y^2 + 3*x*y*z - 3*x*z^2 + 7*y^3 + y^2*z - 4*y*z^2 + z^3"
        );
        for b in 1..=10 {
            let p = build_invariant(&validate_i64(&[b, -1]).unwrap());
            let vars = ["x", "y"];
            let expected = MultiPoly::parse(&format!("x^2 - {b}*x*y + y^2"), &vars).unwrap();
            assert_eq!(p, expected);
        }
    }

    #[test]
    fn shifts() {
        let t = trib();
        assert_eq!(forward(&t, &ints(&[0, 0, 1])), ints(&[0, 1, 1]));
        assert_eq!(forward(&t, &ints(&[1, 2, 4])), ints(&[2, 4, 7]));
        assert_eq!(backward(&t, &ints(&[0, 0, 1])), ints(&[1, 0, 0]));
        assert_eq!(backward(&t, &ints(&[0, 1, 1])), ints(&[0, 0, 1]));
        let r = validate_i64(&[2, 3, 1]).unwrap();
        assert_eq!(forward(&r, &ints(&[1, 1, 4])), ints(&[1, 4, 12]));
        let p = build_invariant(&r);
        assert_eq!(p.eval(&ints(&[1, 4, 12])).unwrap(), BigInt::one());
        let b = backward(&r, &ints(&[0, 1, 3]));
        assert_eq!(b, ints(&[1, 0, 1]));
        assert_eq!(forward(&r, &b), ints(&[0, 1, 3]));
        let r4 = validate_i64(&[2, 0, 3, -1]).unwrap();
        let t4 = ints(&[5, -2, 7, 1]);
        assert_eq!(backward(&r4, &forward(&r4, &t4)), t4);
        assert_eq!(forward(&r4, &backward(&r4, &t4)), t4);
    }

    #[test]
    fn symbolic_shifts_preserve_invariant() {
        for c in [&[1, 1, 1][..], &[2, 3, 1], &[4, -1], &[1, 2, 3, -1], &[1, 0, 0, 2, 1]] {
            let r = validate_i64(c).unwrap();
            let p = build_invariant(&r);
            assert!(check_invariance(&r, &p), "forward invariance for {r}");
            let back = p.substitute(&backward_bindings(&r)).unwrap();
            assert_eq!(back, p, "backward invariance for {r}");
            assert!(p.is_homogeneous());
            assert_eq!(p.total_degree(), Some(r.order() as u32));
        }
    }

    #[test]
    fn higher_order_variable_names() {
        let r = validate_i64(&[1, 2, 3, -1]).unwrap();
        assert_eq!(r.var_names(), ["x1", "x2", "x3", "x4"]);
    }

    #[test]
    fn admissibility() {
        let rep = is_admissible(&trib()).unwrap();
        assert!(rep.admissible());
        assert!((rep.dominant_root.unwrap().approx() - 1.8393).abs() < 1e-4);

        let rep = is_admissible(&validate_i64(&[1, 3, 1]).unwrap()).unwrap();
        assert!(!rep.irreducible);
        assert!(!rep.admissible());
        assert_eq!(rep.rational_root, Some(BigInt::from(-1)));
        assert_eq!(rep.factorization.as_deref(), Some("(X + 1)*(X^2 - 2*X - 1)"));

        assert!(is_admissible(&validate_i64(&[10, 3, 1]).unwrap()).unwrap().admissible());
        assert!(matches!(
            is_admissible(&validate_i64(&[1, 2, 3, -1]).unwrap()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            is_admissible(&validate_i64(&[-1, 2, 1]).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn reducibility_exactly_when_b_is_a_plus_2() {
        for a in 1..=12 {
            for b in 1..=14 {
                let rep = is_admissible(&validate_i64(&[a, b, 1]).unwrap()).unwrap();
                assert_eq!(rep.irreducible, b != a + 2, "a = {a}, b = {b}");
            }
        }
    }
}
