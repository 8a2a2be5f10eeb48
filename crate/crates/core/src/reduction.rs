//! Dehomogenization of the order-3 invariant, avoidance regions in the unit
//! square, exact minimization of the resulting cubic and the integer search
//! limit derived from the minima.
//!
//! Points of the `(t, s)` plane are `t = x/z`, `s = y/z`; the dehomogenized
//! cubic is stored over the variable list `[s, t]` so that it renders in the
//! conventional `7*s^3 + 11*s^2*t + ...` order.

use std::cmp::Ordering;
use std::fmt;

use log::{debug, info};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{
    int, isolate_real_roots, to_f64, AlgebraicNumber, BigRat, Interval, UniPoly,
};
use crate::invariant::Recurrence;
use crate::mpoly::{resultant, MultiPoly};

/// Variable list of the dehomogenized cubic.
pub const PLANE_VARS: [&str; 2] = ["s", "t"];
const S: usize = 0;
const T: usize = 1;

/// `c + ct*t + cs*s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub c: BigRat,
    pub ct: BigRat,
    pub cs: BigRat,
}

impl LinearForm {
    pub fn new(c: BigRat, ct: BigRat, cs: BigRat) -> Self {
        LinearForm { c, ct, cs }
    }

    pub fn eval(&self, t: &BigRat, s: &BigRat) -> BigRat {
        &self.c + &self.ct * t + &self.cs * s
    }

    /// Exact value at an algebraic point.
    pub fn eval_algebraic(&self, t: &AlgebraicNumber, s: &AlgebraicNumber) -> AlgebraicNumber {
        let terms = vec![
            (vec![0, 0], self.c.clone()),
            (vec![1, 0], self.ct.clone()),
            (vec![0, 1], self.cs.clone()),
        ];
        AlgebraicNumber::evaluate(&terms, &[t.clone(), s.clone()])
    }

    /// Integer multiple over `[s, t]`, positive scaling so relations keep
    /// their direction.
    pub fn to_poly(&self) -> MultiPoly {
        let l = [&self.c, &self.ct, &self.cs]
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled = |q: &BigRat| (q * BigRat::from_integer(l.clone())).to_integer();
        MultiPoly::from_terms(
            &PLANE_VARS,
            [
                (vec![0, 0], scaled(&self.c)),
                (vec![0, 1], scaled(&self.ct)),
                (vec![1, 0], scaled(&self.cs)),
            ],
        )
        .expect("two plane variables")
    }

    fn from_poly(p: &MultiPoly) -> Result<Self> {
        if p.total_degree().unwrap_or(0) > 1 {
            return Err(Error::InvalidInput(format!("constraint {p} is not linear")));
        }
        let c = |e: [u32; 2]| BigRat::from_integer(p.coeff(&e));
        Ok(LinearForm::new(c([0, 0]), c([0, 1]), c([1, 0])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `form <= 0`
    Le,
    /// `form >= 0`
    Ge,
}

impl Relation {
    fn holds(self, sign: Ordering) -> bool {
        match self {
            Relation::Le => sign != Ordering::Greater,
            Relation::Ge => sign != Ordering::Less,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub form: LinearForm,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(form: LinearForm, relation: Relation) -> Self {
        Constraint { form, relation }
    }

    pub fn holds_at(&self, t: &BigRat, s: &BigRat) -> bool {
        self.relation.holds(self.form.eval(t, s).cmp(&BigRat::zero()))
    }

    pub fn holds_at_algebraic(&self, t: &AlgebraicNumber, s: &AlgebraicNumber) -> bool {
        self.relation.holds(self.form.eval_algebraic(t, s).sign())
    }

    /// Parses the rendering produced by `Display`, e.g. `-2*s - 3*t + 1 <= 0`.
    pub fn parse(text: &str) -> Result<Self> {
        let (lhs, relation, rhs) = if let Some((l, r)) = text.split_once("<=") {
            (l, Relation::Le, r)
        } else if let Some((l, r)) = text.split_once(">=") {
            (l, Relation::Ge, r)
        } else {
            return Err(Error::InvalidInput(format!("no relation in constraint {text:?}")));
        };
        if rhs.trim() != "0" {
            return Err(Error::InvalidInput(format!(
                "constraint {text:?} must compare against 0"
            )));
        }
        let p = MultiPoly::parse(lhs, &PLANE_VARS)?;
        Ok(Constraint::new(LinearForm::from_poly(&p)?, relation))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.form.to_poly(), self.relation.symbol())
    }
}

pub type RatPoint = (BigRat, BigRat);

/// Intersection of linear constraints with the unit square `0 <= t, s <= 1`,
/// a convex rational polygon.
#[derive(Clone, Debug)]
pub struct Region {
    constraints: Vec<Constraint>,
    vertices: Vec<RatPoint>,
    edges: Vec<(RatPoint, RatPoint)>,
}

impl Region {
    pub fn new(constraints: Vec<Constraint>) -> Result<Self> {
        let mut all = constraints.clone();
        let (zero, one) = (BigRat::zero(), BigRat::one());
        all.push(Constraint::new(LinearForm::new(zero.clone(), one.clone(), zero.clone()), Relation::Ge));
        all.push(Constraint::new(LinearForm::new(-&one, one.clone(), zero.clone()), Relation::Le));
        all.push(Constraint::new(LinearForm::new(zero.clone(), zero.clone(), one.clone()), Relation::Ge));
        all.push(Constraint::new(LinearForm::new(-&one, zero.clone(), one.clone()), Relation::Le));

        let inside = |p: &RatPoint| all.iter().all(|c| c.holds_at(&p.0, &p.1));
        let mut vertices: Vec<RatPoint> = Vec::new();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if let Some(p) = intersect(&all[i].form, &all[j].form) {
                    if inside(&p) && !vertices.contains(&p) {
                        vertices.push(p);
                    }
                }
            }
        }
        if vertices.is_empty() {
            return Err(Error::Domain("region is empty inside the unit square".into()));
        }
        vertices.sort();
        let mut edges = Vec::new();
        for c in &all {
            let on: Vec<&RatPoint> = vertices
                .iter()
                .filter(|p| c.form.eval(&p.0, &p.1).is_zero())
                .collect();
            if on.len() >= 2 {
                let e = (on[0].clone(), on[on.len() - 1].clone());
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        Ok(Region {
            constraints,
            vertices,
            edges,
        })
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Polygon vertices in lexicographic `(t, s)` order.
    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(RatPoint, RatPoint)] {
        &self.edges
    }

    pub fn contains_rational(&self, t: &BigRat, s: &BigRat) -> bool {
        let unit = |v: &BigRat| !v.is_negative() && v <= &BigRat::one();
        unit(t) && unit(s) && self.constraints.iter().all(|c| c.holds_at(t, s))
    }

    pub fn contains(&self, t: &AlgebraicNumber, s: &AlgebraicNumber) -> bool {
        let unit = |v: &AlgebraicNumber| {
            v.sign() != Ordering::Less && v.cmp_rational(&BigRat::one()) != Ordering::Greater
        };
        unit(t) && unit(s) && self.constraints.iter().all(|c| c.holds_at_algebraic(t, s))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.constraints.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}} in the unit square", parts.join(", "))
    }
}

fn intersect(a: &LinearForm, b: &LinearForm) -> Option<RatPoint> {
    let det = &a.ct * &b.cs - &a.cs * &b.ct;
    if det.is_zero() {
        return None;
    }
    let t = (&a.cs * &b.c - &a.c * &b.cs) / &det;
    let s = (&a.c * &b.ct - &a.ct * &b.c) / &det;
    Some((t, s))
}

/// `f(t, s) = P(t, s, 1)` over `[s, t]`.
pub fn dehomogenize(p: &MultiPoly) -> Result<MultiPoly> {
    if p.nvars() != 3 {
        return Err(Error::InvalidInput(format!(
            "dehomogenization needs a polynomial in 3 variables, got {}",
            p.nvars()
        )));
    }
    if !p.is_homogeneous() || p.total_degree() != Some(3) {
        return Err(Error::InvalidInput(
            "dehomogenization needs a homogeneous cubic".into(),
        ));
    }
    MultiPoly::from_terms(
        &PLANE_VARS,
        p.terms().map(|(e, c)| (vec![e[1], e[0]], c.clone())),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    /// `1 - a s - b t <= 0`: the backward step is not positive.
    First,
    /// `1 - a s - (b+1) t >= 0`: the backward step is not smaller than `x`.
    Second,
}

pub fn avoidance_region(a: &BigInt, b: &BigInt, which: RegionKind) -> Result<Region> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::InvalidInput(format!(
            "avoidance regions need a, b >= 1, got a = {a}, b = {b}"
        )));
    }
    let a = BigRat::from_integer(a.clone());
    let b = BigRat::from_integer(b.clone());
    let c = match which {
        RegionKind::First => Constraint::new(LinearForm::new(BigRat::one(), -b, -a), Relation::Le),
        RegionKind::Second => Constraint::new(
            LinearForm::new(BigRat::one(), -(b + BigRat::one()), -a),
            Relation::Ge,
        ),
    };
    Region::new(vec![c])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateKind {
    Vertex,
    Edge,
    Interior,
    Sweep,
}

#[derive(Clone, Debug)]
pub struct MinReport {
    pub region: Region,
    pub minimum: AlgebraicNumber,
    /// `(t*, s*)`.
    pub witness: (AlgebraicNumber, AlgebraicNumber),
    pub witness_kind: CandidateKind,
    pub positive: bool,
    /// Floating point estimate from a grid pre-pass; never used as evidence.
    pub float_guess: f64,
    /// The gradient vanished on a curve; interior points came from a sweep.
    pub degenerate: bool,
    pub candidates: usize,
}

impl MinReport {
    /// `minimum^(-1/3)`, when the minimum is positive.
    pub fn inv_cuberoot(&self) -> Option<AlgebraicNumber> {
        self.positive
            .then(|| self.minimum.cbrt().inv().expect("positive minimum"))
    }
}

struct Candidate {
    t: AlgebraicNumber,
    s: AlgebraicNumber,
    value: AlgebraicNumber,
    kind: CandidateKind,
}

/// Interior critical points of `f` in the open-or-closed unit square.
#[derive(Clone, Debug)]
pub struct CriticalSet {
    /// `(t, s)` pairs with both partial derivatives exactly zero.
    pub points: Vec<(AlgebraicNumber, AlgebraicNumber)>,
    /// The two partial derivatives share a common factor.
    pub degenerate: bool,
}

fn unit_roots(p: &UniPoly) -> Result<Vec<AlgebraicNumber>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    Ok(isolate_real_roots(p)?
        .into_iter()
        .filter(|r| r.sign() != Ordering::Less && r.cmp_rational(&BigRat::one()) != Ordering::Greater)
        .collect())
}

/// Common roots of `f_t` and `f_s` in `[0, 1]^2`, by resultant elimination:
/// every common root projects to a root of `Res_t` and of `Res_s`; each
/// pairing is then decided exactly.
pub fn critical_points(f: &MultiPoly) -> Result<CriticalSet> {
    check_plane(f)?;
    let ft = f.derivative(T);
    let fs = f.derivative(S);
    let rs = resultant(&ft, &fs, T)?;
    let rt = resultant(&ft, &fs, S)?;
    if rs.is_zero() || rt.is_zero() {
        return Ok(CriticalSet {
            points: Vec::new(),
            degenerate: true,
        });
    }
    let s_roots = unit_roots(&rs.to_univariate(S).expect("t eliminated"))?;
    let t_roots = unit_roots(&rt.to_univariate(T).expect("s eliminated"))?;
    let ft_terms = ft.rational_terms();
    let fs_terms = fs.rational_terms();
    let narrow = BigRat::new(BigInt::one(), BigInt::one() << 40u32);
    let mut points = Vec::new();
    for t in &t_roots {
        let t = t.refine(&narrow);
        for s in &s_roots {
            let s = s.refine(&narrow);
            let boxes = [s.enclosure(), t.enclosure()];
            let maybe = |terms: &[(Vec<u32>, BigRat)]| {
                crate::exact::interval::eval_terms(terms, &boxes).contains_zero()
            };
            if !maybe(&ft_terms) || !maybe(&fs_terms) {
                continue;
            }
            let point = [s.clone(), t.clone()];
            if AlgebraicNumber::evaluate(&ft_terms, &point).is_zero()
                && AlgebraicNumber::evaluate(&fs_terms, &point).is_zero()
            {
                points.push((t.clone(), s.clone()));
            }
        }
    }
    Ok(CriticalSet {
        points,
        degenerate: false,
    })
}

fn check_plane(f: &MultiPoly) -> Result<()> {
    if f.vars() != PLANE_VARS {
        return Err(Error::InvalidInput(format!(
            "expected a polynomial in [s, t], got {:?}",
            f.vars()
        )));
    }
    Ok(())
}

fn rpoly_mul(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    let mut out = vec![BigRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rpoly_pow(a: &[BigRat], e: u32) -> Vec<BigRat> {
    (0..e).fold(vec![BigRat::one()], |acc, _| rpoly_mul(&acc, a))
}

/// `f(p0 + lambda (p1 - p0))` as a polynomial in `lambda`, constant first.
fn restrict_to_segment(f: &MultiPoly, p0: &RatPoint, p1: &RatPoint) -> Vec<BigRat> {
    let tl = [p0.0.clone(), &p1.0 - &p0.0];
    let sl = [p0.1.clone(), &p1.1 - &p0.1];
    let mut out = vec![BigRat::zero(); f.total_degree().unwrap_or(0) as usize + 1];
    for (e, c) in f.terms() {
        let term = rpoly_mul(&rpoly_pow(&sl, e[S]), &rpoly_pow(&tl, e[T]));
        for (k, v) in term.into_iter().enumerate() {
            out[k] += v * BigRat::from_integer(c.clone());
        }
    }
    out
}

fn float_guess(f: &MultiPoly, region: &Region) -> f64 {
    let terms: Vec<(Vec<u32>, f64)> = f
        .terms()
        .map(|(e, c)| (e.to_vec(), c.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let n = 64;
    let mut best = f64::INFINITY;
    for i in 0..=n {
        for j in 0..=n {
            let (t, s) = (i as f64 / n as f64, j as f64 / n as f64);
            let inside = region.constraints.iter().all(|c| {
                let v = to_f64(&c.form.c) + to_f64(&c.form.ct) * t + to_f64(&c.form.cs) * s;
                match c.relation {
                    Relation::Le => v <= 1e-12,
                    Relation::Ge => v >= -1e-12,
                }
            });
            if inside {
                let v: f64 = terms
                    .iter()
                    .map(|(e, c)| c * s.powi(e[S] as i32) * t.powi(e[T] as i32))
                    .sum();
                best = best.min(v);
            }
        }
    }
    best
}

/// Exact global minimum of `f` (over `[s, t]`, degree <= 3) on `region`.
///
/// Candidates are the polygon vertices, the critical points of `f` along
/// each edge, and the interior critical points inside the region; the least
/// value wins, ties going to the lexicographically smallest `(t, s)`.
pub fn exact_min(f: &MultiPoly, region: &Region) -> Result<MinReport> {
    check_plane(f)?;
    if f.total_degree().unwrap_or(0) > 3 {
        return Err(Error::InvalidInput(
            "exact minimization is implemented for total degree <= 3".into(),
        ));
    }
    let guess = float_guess(f, region);
    info!("making a floating point guess: {guess}");
    let f_terms = f.rational_terms();
    let mut candidates: Vec<Candidate> = Vec::new();

    for (t, s) in region.vertices() {
        let value = f.eval_rat(&[s.clone(), t.clone()])?;
        candidates.push(Candidate {
            t: AlgebraicNumber::from_rational(t.clone()),
            s: AlgebraicNumber::from_rational(s.clone()),
            value: AlgebraicNumber::from_rational(value),
            kind: CandidateKind::Vertex,
        });
    }

    let edge_candidates: Vec<Vec<Candidate>> = region
        .edges()
        .par_iter()
        .map(|(p0, p1)| -> Result<Vec<Candidate>> {
            let g = restrict_to_segment(f, p0, p1);
            let dg: Vec<BigRat> = g
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRat::from_integer(BigInt::from(k)))
                .collect();
            let (dpoly, _) = UniPoly::from_rationals(&dg);
            let mut out = Vec::new();
            if dpoly.degree().unwrap_or(0) == 0 {
                return Ok(out);
            }
            for lambda in isolate_real_roots(&dpoly)? {
                if lambda.sign() != Ordering::Greater
                    || lambda.cmp_rational(&BigRat::one()) != Ordering::Less
                {
                    continue;
                }
                let t = AlgebraicNumber::eval_univariate(&[p0.0.clone(), &p1.0 - &p0.0], &lambda);
                let s = AlgebraicNumber::eval_univariate(&[p0.1.clone(), &p1.1 - &p0.1], &lambda);
                let value = AlgebraicNumber::eval_univariate(&g, &lambda);
                out.push(Candidate {
                    t,
                    s,
                    value,
                    kind: CandidateKind::Edge,
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    candidates.extend(edge_candidates.into_iter().flatten());

    let critical = critical_points(f)?;
    for (t, s) in critical.points {
        if region.contains(&t, &s) {
            let value = AlgebraicNumber::evaluate(&f_terms, &[s.clone(), t.clone()]);
            candidates.push(Candidate {
                t,
                s,
                value,
                kind: CandidateKind::Interior,
            });
        }
    }
    if critical.degenerate {
        // the gradient vanishes along a curve where f is locally constant;
        // sweep an exact rational grid to sample its value inside the region
        let n = 64;
        for i in 0..=n {
            for j in 0..=n {
                let t = BigRat::new(BigInt::from(i), BigInt::from(n));
                let s = BigRat::new(BigInt::from(j), BigInt::from(n));
                if region.contains_rational(&t, &s) {
                    let value = f.eval_rat(&[s.clone(), t.clone()])?;
                    candidates.push(Candidate {
                        t: AlgebraicNumber::from_rational(t),
                        s: AlgebraicNumber::from_rational(s),
                        value: AlgebraicNumber::from_rational(value),
                        kind: CandidateKind::Sweep,
                    });
                }
            }
        }
    }
    debug!("{} minimization candidates", candidates.len());

    let count = candidates.len();
    let best = candidates
        .into_iter()
        .reduce(|a, b| {
            let order = a
                .value
                .exact_cmp(&b.value)
                .then_with(|| a.t.exact_cmp(&b.t))
                .then_with(|| a.s.exact_cmp(&b.s));
            if order == Ordering::Greater {
                b
            } else {
                a
            }
        })
        .ok_or_else(|| Error::Domain("no minimization candidates".into()))?;
    Ok(MinReport {
        region: region.clone(),
        positive: best.value.sign() == Ordering::Greater,
        minimum: best.value,
        witness: (best.t, best.s),
        witness_kind: best.kind,
        float_guess: guess,
        degenerate: critical.degenerate,
        candidates: count,
    })
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub per_region: Vec<MinReport>,
    /// Every solution with `z >= search_limit` reduces; 0 when the method
    /// fails.
    pub search_limit: u64,
    /// Index of the region that determines the limit.
    pub binding: Option<usize>,
    pub method_ok: bool,
}

/// Largest `k >= 0` with `k^3 m <= 1`, for positive `m`.
fn cube_floor(m: &AlgebraicNumber) -> u64 {
    let fits = |k: u64| {
        let k3 = BigRat::from_integer(BigInt::from(k).pow(3));
        k == 0 || m.cmp_rational(&k3.recip()) != Ordering::Greater
    };
    let mut k = m.approx().powf(-1.0 / 3.0).floor().max(0.0) as u64;
    while !fits(k) {
        k -= 1;
    }
    while fits(k + 1) {
        k += 1;
    }
    k
}

/// `L = 1 + max_r floor(m_r^(-1/3))`, so that `(L-1)^3 m <= 1 < L^3 m` for
/// the binding region's minimum `m`.
pub fn search_bound(reports: Vec<MinReport>) -> BoundReport {
    let method_ok = !reports.is_empty() && reports.iter().all(|r| r.positive);
    if !method_ok {
        return BoundReport {
            per_region: reports,
            search_limit: 0,
            binding: None,
            method_ok,
        };
    }
    let mut best = (0, 0u64);
    for (i, r) in reports.iter().enumerate() {
        let limit = cube_floor(&r.minimum) + 1;
        if limit > best.1 {
            best = (i, limit);
        }
    }
    BoundReport {
        per_region: reports,
        search_limit: best.1,
        binding: Some(best.0),
        method_ok,
    }
}

/// Both avoidance regions of an order-3 recurrence `(a, b, 1)`, minimized,
/// and the resulting search limit.
pub fn derive_bound(rec: &Recurrence, p: &MultiPoly) -> Result<BoundReport> {
    let (a, b) = rec.ab().ok_or_else(|| {
        Error::Unsupported("search bounds are defined for order 3 only".into())
    })?;
    let f = dehomogenize(p)?;
    let reports = [RegionKind::First, RegionKind::Second]
        .par_iter()
        .map(|&k| exact_min(&f, &avoidance_region(&a, &b, k)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(search_bound(reports))
}

/// `a^2 + b^2 a / 12 + 3b/2 + b^4/72`, the truncated asymptotic limit.
pub fn asymptotic_limit(a: &BigInt, b: &BigInt) -> BigRat {
    let a = BigRat::from_integer(a.clone());
    let b = BigRat::from_integer(b.clone());
    &a * &a + &b * &b * &a / int(12) + &b * int(3) / int(2) + b.pow(4) / int(72)
}

/// The fixed point `(1/alpha^2, 1/alpha)` of the plane map
/// `(t, s) -> (s / (a + b s + t), 1 / (a + b s + t))`.
#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub t: AlgebraicNumber,
    pub s: AlgebraicNumber,
    /// `f(t, s) = 0`, decided by reducing `f(q^2, q)` with
    /// `q = alpha^2 - a alpha - b = 1/alpha` modulo the characteristic
    /// polynomial.
    pub on_curve: bool,
}

pub fn fixed_point(rec: &Recurrence, alpha: &AlgebraicNumber, f: &MultiPoly) -> Result<FixedPoint> {
    check_plane(f)?;
    let (a, b) = rec
        .ab()
        .ok_or_else(|| Error::Unsupported("fixed point is defined for order 3 only".into()))?;
    let q = [
        BigRat::from_integer(-b),
        BigRat::from_integer(-a),
        BigRat::one(),
    ];
    let q2 = rpoly_mul(&q, &q);
    let mut h = vec![BigRat::zero(); 1];
    for (e, c) in f.terms() {
        let term = rpoly_mul(&rpoly_pow(&q, e[S]), &rpoly_pow(&q2, e[T]));
        if h.len() < term.len() {
            h.resize(term.len(), BigRat::zero());
        }
        for (k, v) in term.into_iter().enumerate() {
            h[k] += v * BigRat::from_integer(c.clone());
        }
    }
    let (hpoly, _) = UniPoly::from_rationals(&h);
    let on_curve = hpoly.rem_rational(&rec.characteristic()).iter().all(Zero::is_zero);
    let s = AlgebraicNumber::eval_univariate(&q, alpha);
    let t = AlgebraicNumber::eval_univariate(&q2, alpha);
    Ok(FixedPoint { t, s, on_curve })
}

/// Encloses `f` on a box around the fixed point; used by plots and tests.
pub fn enclose(f: &MultiPoly, t: &Interval, s: &Interval) -> Interval {
    crate::exact::interval::eval_terms(&f.rational_terms(), &[s.clone(), t.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::invariant::{build_invariant, is_admissible, validate_i64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cubic(a: i64, b: i64) -> MultiPoly {
        dehomogenize(&build_invariant(&validate_i64(&[a, b, 1]).unwrap())).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn dehomogenized_cubics() {
        assert_eq!(
            cubic(1, 1).render(),
            "2*s^3 + 2*s^2*t + 2*s*t^2 + t^3 - 2*s*t + t^2 - 2*s - t + 1"
        );
        assert_eq!(
            cubic(2, 3).render(),
            "7*s^3 + 11*s^2*t + 6*s*t^2 + t^3 + s^2 + 3*s*t + 2*t^2 - 4*s - 3*t + 1"
        );
        let z3 = MultiPoly::parse("z^3", &["x", "y", "z"]).unwrap();
        assert_eq!(dehomogenize(&z3).unwrap().render(), "1");
        let bad = MultiPoly::parse("x^2 + z^3", &["x", "y", "z"]).unwrap();
        assert!(matches!(dehomogenize(&bad), Err(Error::InvalidInput(_))));
        let two = MultiPoly::parse("x^3", &["x", "y"]).unwrap();
        assert!(dehomogenize(&two).is_err());
    }

    #[test]
    fn regions() {
        let r = avoidance_region(&big(1), &big(1), RegionKind::First).unwrap();
        assert_eq!(r.constraints()[0].to_string(), "-s - t + 1 <= 0");
        assert_eq!(
            r.vertices(),
            &[(int(0), int(1)), (int(1), int(0)), (int(1), int(1))]
        );
        let r = avoidance_region(&big(2), &big(3), RegionKind::Second).unwrap();
        assert_eq!(r.constraints()[0].to_string(), "-2*s - 4*t + 1 >= 0");
        assert!(r.contains_rational(&rat(1, 8), &rat(1, 4)));
        assert!(!r.contains_rational(&rat(1, 4), &rat(1, 4)));
        let r = avoidance_region(&big(1), &big(1), RegionKind::Second).unwrap();
        assert_eq!(r.constraints()[0].to_string(), "-s - 2*t + 1 >= 0");
        assert_eq!(r.vertices(), &[(int(0), int(0)), (int(0), int(1)), (rat(1, 2), int(0))]);
        assert_eq!(r.edges().len(), 3);
    }

    #[test]
    fn constraint_text_round_trip() {
        for text in ["-2*s - 3*t + 1 <= 0", "-s - 2*t + 1 >= 0"] {
            assert_eq!(Constraint::parse(text).unwrap().to_string(), text);
        }
        assert!(Constraint::parse("s*t <= 0").is_err());
        assert!(Constraint::parse("s + t").is_err());
    }

    #[test]
    fn empty_region_is_a_domain_error() {
        let c = Constraint::new(LinearForm::new(int(3), int(1), int(1)), Relation::Le);
        assert!(matches!(Region::new(vec![c]), Err(Error::Domain(_))));
    }

    #[test]
    fn tribonacci_minimum_closed_form() {
        let f = cubic(1, 1);
        let r = avoidance_region(&big(1), &big(1), RegionKind::First).unwrap();
        let rep = exact_min(&f, &r).unwrap();
        assert_eq!(rep.minimum.radical_form().unwrap(), "(398 - 68*sqrt(34))/27");
        assert!(rep.positive);
        assert!((rep.minimum.approx() - 0.0554).abs() < 1e-4);
        let inv = rep.inv_cuberoot().unwrap();
        assert!((inv.approx() - 2.6235).abs() < 1e-4);
    }

    #[test]
    fn pab_region_minima() {
        let f = cubic(2, 3);
        let r1 = exact_min(&f, &avoidance_region(&big(2), &big(3), RegionKind::First).unwrap()).unwrap();
        let r2 = exact_min(&f, &avoidance_region(&big(2), &big(3), RegionKind::Second).unwrap()).unwrap();
        assert_eq!(r1.minimum.radical_form().unwrap(), "(50371 - 1718*sqrt(859))/81675");
        assert_eq!(r2.minimum.radical_form().unwrap(), "(3703 - 106*sqrt(1219))/4968");
        assert_eq!(r1.inv_cuberoot().unwrap().to_decimal(10), "16.36065832");
        assert_eq!(r2.inv_cuberoot().unwrap().to_decimal(10), "13.33123044");
    }

    #[test]
    fn search_limits() {
        for (a, b, limit) in [(1, 1, 5), (2, 3, 17), (5, 3, 36)] {
            let rec = validate_i64(&[a, b, 1]).unwrap();
            let rep = derive_bound(&rec, &build_invariant(&rec)).unwrap();
            assert!(rep.method_ok);
            assert_eq!(rep.search_limit, limit, "(a, b) = ({a}, {b})");
            // (L-1)^3 m <= 1 < L^3 m for the binding minimum
            let m = &rep.per_region[rep.binding.unwrap()].minimum;
            let l = BigInt::from(limit);
            let below = BigRat::from_integer((&l - 1u32).pow(3)).recip();
            let above = BigRat::from_integer(l.pow(3)).recip();
            assert_ne!(m.cmp_rational(&below), Ordering::Greater);
            assert_eq!(m.cmp_rational(&above), Ordering::Greater);
        }
    }

    #[test]
    fn failure_case_has_nonpositive_minimum() {
        let rec = validate_i64(&[1, 3, 1]).unwrap();
        let rep = derive_bound(&rec, &build_invariant(&rec)).unwrap();
        assert!(!rep.method_ok);
        assert_eq!(rep.search_limit, 0);
    }

    #[test]
    fn asymptotic_truncation() {
        assert_eq!(asymptotic_limit(&big(5), &big(3)), rat(275, 8));
        assert_eq!(asymptotic_limit(&big(1), &big(1)), rat(187, 72));
        assert_eq!(asymptotic_limit(&big(10), &big(3)), rat(905, 8));
    }

    #[test]
    fn minimum_below_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (a, b) in [(1, 1), (2, 3)] {
            let f = cubic(a, b);
            for kind in [RegionKind::First, RegionKind::Second] {
                let region = avoidance_region(&big(a), &big(b), kind).unwrap();
                let rep = exact_min(&f, &region).unwrap();
                assert!(region.contains(&rep.witness.0, &rep.witness.1));
                let mut hits = 0;
                while hits < 250 {
                    let t = rat(rng.gen_range(0..=1000), 1000);
                    let s = rat(rng.gen_range(0..=1000), 1000);
                    if !region.contains_rational(&t, &s) {
                        continue;
                    }
                    hits += 1;
                    let v = f.eval_rat(&[s, t]).unwrap();
                    assert_ne!(rep.minimum.cmp_rational(&v), Ordering::Greater);
                }
            }
        }
    }

    #[test]
    fn fixed_points_lie_on_the_curve() {
        for (a, b, t, s) in [(1, 1, 0.2956, 0.5437), (2, 3, 0.1054, 0.3247)] {
            let rec = validate_i64(&[a, b, 1]).unwrap();
            let alpha = is_admissible(&rec).unwrap().dominant_root.unwrap();
            let fp = fixed_point(&rec, &alpha, &cubic(a, b)).unwrap();
            assert!(fp.on_curve);
            assert!((fp.t.approx() - t).abs() < 1e-3);
            assert!((fp.s.approx() - s).abs() < 1e-3);
            let v = AlgebraicNumber::evaluate(&cubic(a, b).rational_terms(), &[fp.s, fp.t]);
            assert!(v.is_zero());
        }
    }

    #[test]
    fn tribonacci_interior_critical_point() {
        let f = cubic(1, 1);
        let crit = critical_points(&f).unwrap();
        assert!(!crit.degenerate);
        assert_eq!(crit.points.len(), 1);
        let (t, s) = &crit.points[0];
        assert!((t.approx() - 0.2956).abs() < 1e-3 && (s.approx() - 0.5437).abs() < 1e-3);
        for d in [f.derivative(T), f.derivative(S)] {
            let narrow = rat(1, 1 << 30);
            let enc = enclose(&d, &t.refine(&narrow).enclosure(), &s.refine(&narrow).enclosure());
            assert!(enc.contains_zero());
            assert!(AlgebraicNumber::evaluate(&d.rational_terms(), &[s.clone(), t.clone()]).is_zero());
        }
    }

    #[test]
    fn degenerate_gradient_is_flagged() {
        // f = (s + t)^3 - 3 (s + t) + 3 has gradient vanishing on s + t = 1
        let f = MultiPoly::parse("(s + t)^3 - 3*(s + t) + 3", &PLANE_VARS).unwrap();
        let region = Region::new(vec![]).unwrap();
        let rep = exact_min(&f, &region).unwrap();
        assert!(rep.degenerate);
        assert_eq!(rep.minimum.as_rational(), Some(int(1)));
    }
}
