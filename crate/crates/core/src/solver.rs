//! Enumeration of small solutions, generator classification, orbit walks,
//! the dominant-projection sign and the brute-force verification oracle.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{AlgebraicNumber, BigRat};
use crate::invariant::{backward, build_invariant, forward, Recurrence, SolutionTuple};
use crate::mpoly::MultiPoly;

/// Step budget for every "eventually" argument.
pub const STEP_BUDGET: usize = 10_000;

/// Evaluates with checked `i128` arithmetic, falling back to exact big
/// integers on overflow.
struct FastPoly<'a> {
    exact: &'a MultiPoly,
    terms: Option<Vec<(Vec<u32>, i128)>>,
}

impl<'a> FastPoly<'a> {
    fn new(exact: &'a MultiPoly) -> Self {
        let terms = exact
            .terms()
            .map(|(e, c)| c.to_i128().map(|c| (e.to_vec(), c)))
            .collect();
        FastPoly { exact, terms }
    }

    fn eval_small(&self, point: &[i64]) -> Option<i128> {
        let terms = self.terms.as_ref()?;
        let mut total: i128 = 0;
        for (e, c) in terms {
            let mut t = *c;
            for (&x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t.checked_mul(x as i128)?;
                }
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    fn is_one(&self, point: &[i64]) -> bool {
        match self.eval_small(point) {
            Some(v) => v == 1,
            None => {
                let big: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
                self.exact.eval(&big).expect("arity checked") == BigInt::from(1)
            }
        }
    }
}

/// All nonnegative weakly increasing windows with entries below `limit` and
/// `P = 1`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub limit: u64,
    pub solutions: Vec<SolutionTuple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub generators: Vec<SolutionTuple>,
}

fn to_big(v: &[i64]) -> SolutionTuple {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Exhaustive exact scan of `0 <= x1 <= .. <= xd < limit`.
pub fn enumerate_below(p: &MultiPoly, limit: u64) -> Result<SolutionSet> {
    let d = p.nvars();
    if d == 0 {
        return Err(Error::InvalidInput("polynomial has no variables".into()));
    }
    let limit_i = i64::try_from(limit)
        .map_err(|_| Error::InvalidInput(format!("search limit {limit} is too large")))?;
    let fast = FastPoly::new(p);
    let mut found: Vec<Vec<i64>> = (0..limit_i)
        .into_par_iter()
        .flat_map_iter(|last| {
            let mut out = Vec::new();
            let mut point = vec![0i64; d];
            point[d - 1] = last;
            scan_increasing(&fast, &mut point, 0, last, &mut out);
            out
        })
        .collect();
    found.sort();
    Ok(SolutionSet {
        limit,
        solutions: found.iter().map(|v| to_big(v)).collect(),
    })
}

fn scan_increasing(fast: &FastPoly, point: &mut Vec<i64>, k: usize, cap: i64, out: &mut Vec<Vec<i64>>) {
    let d = point.len();
    if k == d - 1 {
        if fast.is_one(point) {
            out.push(point.clone());
        }
        return;
    }
    let lo = if k == 0 { 0 } else { point[k - 1] };
    for v in lo..=cap {
        point[k] = v;
        scan_increasing(fast, point, k + 1, cap, out);
    }
}

fn in_class(p: &MultiPoly, t: &[BigInt]) -> bool {
    !t[0].is_negative()
        && t.windows(2).all(|w| w[0] <= w[1])
        && p.eval(t).expect("arity") == BigInt::from(1)
}

/// Generators: members whose backward image is not a nonnegative weakly
/// increasing solution. Every other member must reach a generator through
/// backward steps inside the set; otherwise the set was not complete.
pub fn classify_generators(rec: &Recurrence, set: &SolutionSet) -> Result<GeneratorSet> {
    let p = build_invariant(rec);
    let members: HashSet<&SolutionTuple> = set.solutions.iter().collect();
    let mut generators = Vec::new();
    for t in &set.solutions {
        let mut cur = t.clone();
        let mut steps = 0;
        loop {
            let prev = backward(rec, &cur);
            if !in_class(&p, &prev) {
                break;
            }
            if !members.contains(&prev) {
                return Err(Error::Completeness(format!(
                    "{} reduces to {} which is missing below the limit {}",
                    crate::invariant::format_tuple(t),
                    crate::invariant::format_tuple(&prev),
                    set.limit
                )));
            }
            cur = prev;
            steps += 1;
            if steps > STEP_BUDGET {
                return Err(Error::Budget(format!(
                    "backward chain from {} did not reach a generator",
                    crate::invariant::format_tuple(t)
                )));
            }
        }
        if steps == 0 {
            generators.push(t.clone());
        }
    }
    Ok(GeneratorSet { generators })
}

/// Generators without the completeness requirement, for recurrences outside
/// the converse theory. For even order `P(-w) = P(w)`, so each generator's
/// negation is listed as well.
pub fn exploratory_generators(rec: &Recurrence, set: &SolutionSet) -> GeneratorSet {
    let p = build_invariant(rec);
    let base: Vec<SolutionTuple> = set
        .solutions
        .iter()
        .filter(|t| !in_class(&p, &backward(rec, t)))
        .cloned()
        .collect();
    let mut generators = base.clone();
    if rec.order().is_multiple_of(2) {
        generators.extend(base.iter().map(|t| t.iter().map(|x| -x).collect()));
    }
    GeneratorSet { generators }
}

/// `R^-back(seed), .., R^forward(seed)`, oldest first.
pub fn orbit(rec: &Recurrence, seed: &[BigInt], back: usize, fwd: usize) -> Vec<SolutionTuple> {
    let mut before = Vec::with_capacity(back);
    let mut cur = seed.to_vec();
    for _ in 0..back {
        cur = backward(rec, &cur);
        before.push(cur.clone());
    }
    before.reverse();
    let mut out = before;
    let mut cur = seed.to_vec();
    out.push(cur.clone());
    for _ in 0..fwd {
        cur = forward(rec, &cur);
        out.push(cur.clone());
    }
    out
}

/// Coefficients in `alpha` of the left dominant eigenvector functional
/// `(alpha^2 - a alpha - b) x + (alpha - a) y + z`, constant first.
pub fn dominant_functional(rec: &Recurrence, t: &[BigInt]) -> Result<[BigRat; 3]> {
    let (a, b) = rec
        .ab()
        .ok_or_else(|| Error::Unsupported("dominant sign is defined for order 3".into()))?;
    let (x, y, z) = (&t[0], &t[1], &t[2]);
    let r = |v: BigInt| BigRat::from_integer(v);
    Ok([r(z - &b * x - &a * y), r(y - &a * x), r(x.clone())])
}

/// Sign of the dominant projection of a window, by refining `alpha` until
/// the interval enclosure excludes zero. The value is nonzero for nonzero
/// windows since `1, alpha, alpha^2` are rationally independent.
pub fn dominant_sign(rec: &Recurrence, alpha: &AlgebraicNumber, t: &[BigInt]) -> Result<i8> {
    let coeffs = dominant_functional(rec, t)?;
    if t.iter().all(Zero::is_zero) {
        return Ok(0);
    }
    let terms: Vec<(Vec<u32>, BigRat)> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (vec![k as u32], c.clone()))
        .collect();
    let mut a = alpha.clone();
    for _ in 0..64 {
        let enc = crate::exact::interval::eval_terms(&terms, &[a.enclosure()]);
        if enc.lo.is_positive() {
            return Ok(1);
        }
        if enc.hi.is_negative() {
            return Ok(-1);
        }
        if enc.lo == enc.hi {
            return Ok(0);
        }
        a = a.refine(&(a.width() / BigRat::from_integer(BigInt::from(1u64 << 32))));
    }
    Err(Error::Internal(format!(
        "dominant projection of {} did not separate from zero",
        crate::invariant::format_tuple(t)
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMembership {
    pub tuple: SolutionTuple,
    /// Index into the generator list.
    pub generator: usize,
    /// `tuple = R^step(generator)`.
    pub step: i64,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub radius: u64,
    pub solutions: Vec<SolutionTuple>,
    pub memberships: Vec<OrbitMembership>,
    pub unexplained: Vec<SolutionTuple>,
    pub generators: Vec<SolutionTuple>,
}

impl VerificationReport {
    pub fn all_explained(&self) -> bool {
        self.unexplained.is_empty()
    }
}

fn max_abs(t: &[BigInt]) -> BigInt {
    t.iter().map(|x| x.abs()).max().unwrap_or_default()
}

/// Walks one direction of an orbit, recording windows inside the cube.
/// Stops once every entry exceeds the radius and the window magnitude (its
/// largest absolute entry) has not decreased for 3 consecutive steps; the
/// largest entry of a shifted window often repeats, so growth is weak.
fn walk(
    rec: &Recurrence,
    start: &[BigInt],
    radius: &BigInt,
    forward_dir: bool,
    mut record: impl FnMut(&SolutionTuple, i64),
) -> Result<()> {
    let mut cur = start.to_vec();
    let mut prev_mag = max_abs(&cur);
    let mut growing = 0;
    for n in 1..=STEP_BUDGET as i64 {
        cur = if forward_dir {
            forward(rec, &cur)
        } else {
            backward(rec, &cur)
        };
        if max_abs(&cur) <= *radius {
            record(&cur, if forward_dir { n } else { -n });
        }
        let mag = max_abs(&cur);
        growing = if mag >= prev_mag { growing + 1 } else { 0 };
        prev_mag = mag;
        if growing >= 3 && cur.iter().all(|x| x.abs() > *radius) {
            return Ok(());
        }
    }
    Err(Error::Budget(format!(
        "orbit walk from {} did not leave the cube of radius {radius}",
        crate::invariant::format_tuple(start)
    )))
}

/// Finds every window with all entries in `[-radius, radius]` and `P = 1`,
/// and explains each as an orbit point of a generator.
pub fn brute_force_verify(
    rec: &Recurrence,
    radius: u64,
    generators: &GeneratorSet,
) -> Result<VerificationReport> {
    let p = build_invariant(rec);
    let r = i64::try_from(radius)
        .ok()
        .filter(|r| *r < 1 << 20)
        .ok_or_else(|| Error::InvalidInput(format!("radius {radius} is too large")))?;
    let d = rec.order();
    let fast = FastPoly::new(&p);
    let mut found: Vec<Vec<i64>> = (-r..=r)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut point = vec![0i64; d];
            point[0] = first;
            scan_cube(&fast, &mut point, 1, r, &mut out);
            out
        })
        .collect();
    found.sort();
    let solutions: Vec<SolutionTuple> = found.iter().map(|v| to_big(v)).collect();

    let big_r = BigInt::from(r);
    let mut seen: HashMap<SolutionTuple, (usize, i64)> = HashMap::new();
    for (i, g) in generators.generators.iter().enumerate() {
        let mut note = |t: &SolutionTuple, n: i64| {
            let entry = seen.entry(t.clone()).or_insert((i, n));
            if (i, n.abs()) < (entry.0, entry.1.abs()) {
                *entry = (i, n);
            }
        };
        if max_abs(g) <= big_r {
            note(g, 0);
        }
        walk(rec, g, &big_r, true, &mut note)?;
        walk(rec, g, &big_r, false, &mut note)?;
    }
    let mut memberships = Vec::new();
    let mut unexplained = Vec::new();
    for s in &solutions {
        match seen.get(s) {
            Some(&(generator, step)) => memberships.push(OrbitMembership {
                tuple: s.clone(),
                generator,
                step,
            }),
            None => unexplained.push(s.clone()),
        }
    }
    Ok(VerificationReport {
        radius,
        solutions,
        memberships,
        unexplained,
        generators: generators.generators.clone(),
    })
}

fn scan_cube(fast: &FastPoly, point: &mut Vec<i64>, k: usize, r: i64, out: &mut Vec<Vec<i64>>) {
    if k == point.len() {
        if fast.is_one(point) {
            out.push(point.clone());
        }
        return;
    }
    for v in -r..=r {
        point[k] = v;
        scan_cube(fast, point, k + 1, r, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{is_admissible, validate_i64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> SolutionTuple {
        to_big(v)
    }

    fn rec(c: &[i64]) -> Recurrence {
        validate_i64(c).unwrap()
    }

    fn set_of(c: &[i64], limit: u64) -> SolutionSet {
        enumerate_below(&build_invariant(&rec(c)), limit).unwrap()
    }

    #[test]
    fn tribonacci_enumeration() {
        let s = set_of(&[1, 1, 1], 5);
        let expected: Vec<SolutionTuple> = [[0, 0, 1], [0, 1, 1], [1, 1, 2], [1, 2, 4]]
            .iter()
            .map(|t| ints(t))
            .collect();
        assert_eq!(s.solutions, expected);
        assert!(set_of(&[1, 1, 1], 1).solutions.is_empty());
    }

    #[test]
    fn pab_enumeration_contains_known_solutions() {
        let s = set_of(&[2, 3, 1], 17);
        for t in [[0, 0, 1], [0, 1, 3], [0, 2, 5], [1, 1, 4], [0, 1, 2], [1, 3, 9]] {
            assert!(s.solutions.contains(&ints(&t)), "{t:?}");
        }
        let p = build_invariant(&rec(&[2, 3, 1]));
        assert_eq!(p.eval(&ints(&[0, 2, 7])).unwrap(), BigInt::from(35));
        for t in &s.solutions {
            assert!(t.windows(2).all(|w| w[0] <= w[1]) && !t[0].is_negative());
            assert!(t.iter().all(|x| x < &BigInt::from(17)));
            assert_eq!(p.eval(t).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn generators() {
        for (c, limit, gens) in [
            (&[1, 1, 1], 5, vec![[0, 0, 1]]),
            (&[2, 3, 1], 17, vec![[0, 0, 1], [0, 1, 3], [0, 2, 5], [1, 1, 4]]),
            (&[5, 3, 1], 36, vec![[0, 0, 1]]),
        ] {
            let r = rec(c);
            let g = classify_generators(&r, &set_of(c, limit)).unwrap();
            let expected: Vec<SolutionTuple> = gens.iter().map(|t| ints(t)).collect();
            assert_eq!(g.generators, expected);
        }
    }

    #[test]
    fn generators_and_forward_images_partition_the_set() {
        for (c, limit) in [(&[1, 1, 1], 5), (&[2, 3, 1], 17), (&[5, 3, 1], 36)] {
            let r = rec(c);
            let s = set_of(c, limit);
            let g = classify_generators(&r, &s).unwrap();
            let mut reached: HashSet<SolutionTuple> = HashSet::new();
            for gen in &g.generators {
                let mut cur = gen.clone();
                while s.solutions.contains(&cur) {
                    reached.insert(cur.clone());
                    cur = forward(&r, &cur);
                }
            }
            let all: HashSet<SolutionTuple> = s.solutions.iter().cloned().collect();
            assert_eq!(reached, all);
        }
    }

    #[test]
    fn incomplete_set_is_detected() {
        let r = rec(&[1, 1, 1]);
        let mut s = set_of(&[1, 1, 1], 5);
        s.solutions.retain(|t| t != &ints(&[0, 1, 1]));
        assert!(matches!(classify_generators(&r, &s), Err(Error::Completeness(_))));
    }

    #[test]
    fn orbits() {
        let r = rec(&[1, 1, 1]);
        let o = orbit(&r, &ints(&[0, 0, 1]), 0, 6);
        let terms = [0, 0, 1, 1, 2, 4, 7, 13, 24];
        for (k, w) in o.iter().enumerate() {
            assert_eq!(w, &ints(&terms[k..k + 3]));
        }
        let o = orbit(&r, &ints(&[0, 0, 1]), 3, 0);
        let expected: Vec<SolutionTuple> = [[0, -1, 1], [-1, 1, 0], [1, 0, 0], [0, 0, 1]]
            .iter()
            .map(|t| ints(t))
            .collect();
        assert_eq!(o, expected);
        assert_eq!(orbit(&r, &ints(&[3, 1, 4]), 0, 0), vec![ints(&[3, 1, 4])]);
    }

    #[test]
    fn orbit_windows_stay_on_the_invariant() {
        for c in [&[1, 1, 1][..], &[2, 3, 1], &[5, 3, 1], &[3, -1], &[1, 2, 0, -1]] {
            let r = rec(c);
            let p = build_invariant(&r);
            let mut seed = vec![BigInt::zero(); r.order()];
            seed[r.order() - 1] = BigInt::from(1);
            for w in orbit(&r, &seed, 200, 200) {
                assert_eq!(p.eval(&w).unwrap(), BigInt::from(1));
            }
        }
    }

    #[test]
    fn dominant_signs() {
        let r = rec(&[1, 1, 1]);
        let alpha = is_admissible(&r).unwrap().dominant_root.unwrap();
        assert_eq!(dominant_sign(&r, &alpha, &ints(&[0, 0, 1])).unwrap(), 1);
        assert_eq!(dominant_sign(&r, &alpha, &ints(&[0, 0, -1])).unwrap(), -1);
        assert_eq!(dominant_sign(&r, &alpha, &ints(&[0, 0, 0])).unwrap(), 0);
        for w in orbit(&r, &ints(&[0, 0, 1]), 0, 50) {
            assert_eq!(dominant_sign(&r, &alpha, &w).unwrap(), 1);
        }
    }

    #[test]
    fn positive_projection_becomes_increasing() {
        let r = rec(&[1, 1, 1]);
        let alpha = is_admissible(&r).unwrap().dominant_root.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut tested = 0;
        while tested < 50 {
            let t: SolutionTuple = (0..3).map(|_| BigInt::from(rng.gen_range(-50..=50))).collect();
            if dominant_sign(&r, &alpha, &t).unwrap() != 1 {
                continue;
            }
            tested += 1;
            let reached = orbit(&r, &t, 0, 200)
                .iter()
                .any(|w| !w[0].is_negative() && w[0] <= w[1] && w[1] <= w[2]);
            assert!(reached, "{t:?}");
        }
    }

    #[test]
    fn brute_force_small_radii() {
        let r = rec(&[1, 1, 1]);
        let g = GeneratorSet {
            generators: vec![ints(&[0, 0, 1])],
        };
        let rep = brute_force_verify(&r, 5, &g).unwrap();
        assert_eq!(rep.solutions.len(), 11);
        assert!(rep.all_explained());
        for t in [[1, 0, 0], [-1, 1, 0], [0, -1, 1], [2, 0, -1], [-3, 2, 0], [1, -3, 2], [4, 1, -3]] {
            assert!(rep.solutions.contains(&ints(&t)));
        }
        let rep = brute_force_verify(&r, 1, &g).unwrap();
        let mut expected: Vec<SolutionTuple> = [[0, 0, 1], [0, 1, 1], [1, 0, 0], [-1, 1, 0], [0, -1, 1]]
            .iter()
            .map(|t| ints(t))
            .collect();
        expected.sort();
        assert_eq!(rep.solutions, expected);
        assert!(brute_force_verify(&r, 0, &g).unwrap().solutions.is_empty());
    }

    #[test]
    fn brute_force_pab() {
        let r = rec(&[2, 3, 1]);
        let g = classify_generators(&r, &set_of(&[2, 3, 1], 17)).unwrap();
        let rep = brute_force_verify(&r, 12, &g).unwrap();
        assert!(rep.all_explained(), "{:?}", rep.unexplained);
    }

    #[test]
    fn missing_generator_leaves_unexplained_solutions() {
        let r = rec(&[2, 3, 1]);
        let g = GeneratorSet {
            generators: vec![ints(&[0, 0, 1])],
        };
        let rep = brute_force_verify(&r, 12, &g).unwrap();
        assert!(rep.unexplained.contains(&ints(&[0, 1, 3])));
    }
}
