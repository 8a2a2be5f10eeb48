//! JSON certificate of a completed derivation. Exact payloads are integers,
//! decimal strings and `num/den` strings; `approx` fields are advisory and
//! ignored by [`Certificate::recheck`].

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::pipeline::Derivation;
use crate::error::{Error, Result};
use crate::exact::{parse_rat, to_fraction_string, AlgebraicNumber, BigRat, UniPoly};
use crate::invariant::{build_invariant, check_invariance, is_admissible, validate, Recurrence};
use crate::reduction::{avoidance_region, dehomogenize, exact_min, Constraint, RegionKind};
use crate::solver::{classify_generators, enumerate_below};

pub const TOOL_VERSION: &str = concat!("diorec ", env!("CARGO_PKG_VERSION"));

/// Arbitrary-size integer written as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string()
            .parse()
            .map(JsonInt)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, got {n}")))
    }
}

fn json_ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn big_ints(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|j| j.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceJson {
    pub order: usize,
    pub coeffs: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: JsonInt,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// Defining polynomial coefficients, constant term first, as decimal
/// strings; isolating interval endpoints as `num/den`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicJson {
    pub defining: Vec<String>,
    pub interval: Vec<String>,
    pub approx: f64,
}

impl AlgebraicJson {
    pub fn from_number(x: &AlgebraicNumber) -> Self {
        let (lo, hi) = x.interval();
        AlgebraicJson {
            defining: x.defining().coeffs().iter().map(ToString::to_string).collect(),
            interval: vec![to_fraction_string(lo), to_fraction_string(hi)],
            approx: x.approx(),
        }
    }

    /// Rebuilds and validates the number from its exact fields.
    pub fn to_number(&self) -> Result<AlgebraicNumber> {
        let coeffs = self
            .defining
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| Error::InvalidInput(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if self.interval.len() != 2 {
            return Err(Error::InvalidInput("interval needs two endpoints".into()));
        }
        let lo: BigRat = parse_rat(&self.interval[0])?;
        let hi: BigRat = parse_rat(&self.interval[1])?;
        AlgebraicNumber::from_parts(UniPoly::new(coeffs), lo, hi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityJson {
    pub irreducible: bool,
    pub dominant_root: Option<AlgebraicJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    pub constraints: Vec<String>,
    pub min: AlgebraicJson,
    pub inv_cuberoot_approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionJson {
    pub regions: Vec<RegionJson>,
    pub search_limit: u64,
    pub method_ok: bool,
    /// e.g. `degenerate-critical-set`.
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub recurrence: RecurrenceJson,
    pub polynomial: PolynomialJson,
    pub invariance_verified: bool,
    pub admissibility: AdmissibilityJson,
    pub reduction: ReductionJson,
    pub solutions_below_bound: Vec<Vec<JsonInt>>,
    pub generators: Vec<Vec<JsonInt>>,
    pub tool_version: String,
}

pub fn recurrence_json(rec: &Recurrence) -> RecurrenceJson {
    RecurrenceJson {
        order: rec.order(),
        coeffs: json_ints(rec.coeffs()),
    }
}

pub fn polynomial_json(p: &crate::mpoly::MultiPoly) -> PolynomialJson {
    PolynomialJson {
        vars: p.vars().to_vec(),
        terms: p
            .terms()
            .map(|(e, c)| TermJson {
                exp: e.to_vec(),
                coeff: JsonInt(c.clone()),
            })
            .collect(),
    }
}

/// Outcome of re-verifying a certificate: one line per claim.
#[derive(Clone, Debug, Default)]
pub struct RecheckReport {
    pub checks: Vec<(String, bool)>,
}

impl RecheckReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn record(&mut self, claim: &str, ok: bool) {
        self.checks.push((claim.to_string(), ok));
    }
}

impl Certificate {
    pub fn from_derivation(d: &Derivation) -> Self {
        let regions = d
            .bound
            .per_region
            .iter()
            .map(|r| RegionJson {
                constraints: r.region.constraints().iter().map(ToString::to_string).collect(),
                min: AlgebraicJson::from_number(&r.minimum),
                inv_cuberoot_approx: r.minimum.approx().powf(-1.0 / 3.0),
            })
            .collect();
        let mut flags = Vec::new();
        if d.bound.per_region.iter().any(|r| r.degenerate) {
            flags.push("degenerate-critical-set".to_string());
        }
        Certificate {
            recurrence: recurrence_json(&d.recurrence),
            polynomial: polynomial_json(&d.polynomial),
            invariance_verified: d.invariance_verified,
            admissibility: AdmissibilityJson {
                irreducible: d.admissibility.irreducible,
                dominant_root: d.admissibility.dominant_root.as_ref().map(AlgebraicJson::from_number),
            },
            reduction: ReductionJson {
                regions,
                search_limit: d.bound.search_limit,
                method_ok: d.bound.method_ok,
                flags,
            },
            solutions_below_bound: d.solutions.solutions.iter().map(|t| json_ints(t)).collect(),
            generators: d.generators.generators.iter().map(|t| json_ints(t)).collect(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("malformed certificate: {e}")))
    }

    /// Re-derives every claim from the exact fields. Advisory approximations
    /// are ignored.
    pub fn recheck(&self) -> Result<RecheckReport> {
        let mut rep = RecheckReport::default();
        let rec = validate(&big_ints(&self.recurrence.coeffs))?;
        rep.record("recurrence order", rec.order() == self.recurrence.order);
        let p = build_invariant(&rec);
        rep.record("polynomial is the normalized window determinant", polynomial_json(&p) == self.polynomial);
        rep.record(
            "invariance under the forward shift",
            self.invariance_verified && check_invariance(&rec, &p),
        );

        let adm = is_admissible(&rec)?;
        rep.record("irreducibility", adm.irreducible == self.admissibility.irreducible);
        let root_ok = match (&self.admissibility.dominant_root, &adm.dominant_root) {
            (Some(j), Some(alpha)) => j.to_number()?.exact_cmp(alpha) == Ordering::Equal,
            (None, None) => true,
            _ => false,
        };
        rep.record("dominant root", root_ok && adm.admissible());

        let (a, b) = rec
            .ab()
            .ok_or_else(|| Error::Unsupported("certificates cover order 3 only".into()))?;
        let f = dehomogenize(&p)?;
        let kinds = [RegionKind::First, RegionKind::Second];
        rep.record("two avoidance regions", self.reduction.regions.len() == kinds.len());
        let mut minima = Vec::new();
        for (rj, kind) in self.reduction.regions.iter().zip(kinds) {
            let region = avoidance_region(&a, &b, kind)?;
            let constraints = rj
                .constraints
                .iter()
                .map(|c| Constraint::parse(c))
                .collect::<Result<Vec<_>>>()?;
            rep.record("region constraints", constraints == region.constraints());
            let claimed = rj.min.to_number()?;
            let exact = exact_min(&f, &region)?;
            rep.record(
                "region minimum",
                claimed.exact_cmp(&exact.minimum) == Ordering::Equal,
            );
            minima.push(claimed);
        }
        let positive = minima.iter().all(|m| m.sign() == Ordering::Greater);
        rep.record("method applies", positive == self.reduction.method_ok && positive);

        let l = self.reduction.search_limit;
        let cube_inv = |k: u64| BigRat::from_integer(BigInt::from(k).pow(3)).recip();
        let above_all = l > 0
            && minima
                .iter()
                .all(|m| m.cmp_rational(&cube_inv(l)) == Ordering::Greater);
        let tight = l <= 1
            || minima
                .iter()
                .any(|m| m.cmp_rational(&cube_inv(l - 1)) != Ordering::Greater);
        rep.record("search limit is 1 + max floor(m^(-1/3))", above_all && tight);

        let set = enumerate_below(&p, l)?;
        let listed: Vec<Vec<BigInt>> = self.solutions_below_bound.iter().map(|t| big_ints(t)).collect();
        rep.record(
            "solutions below the limit",
            listed == set.solutions
                && listed
                    .iter()
                    .all(|t| p.eval(t).is_ok_and(|v| v.is_one())),
        );
        let gens = classify_generators(&rec, &set)?;
        let claimed: Vec<Vec<BigInt>> = self.generators.iter().map(|t| big_ints(t)).collect();
        rep.record("generators", claimed == gens.generators);
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::pipeline::{run_pipeline, Outcome};
    use crate::invariant::validate_i64;

    fn certificate(c: &[i64]) -> Certificate {
        match run_pipeline(&validate_i64(c).unwrap()).unwrap() {
            Outcome::Complete(d) => Certificate::from_derivation(&d),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn big_integers_are_json_numbers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let text = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(text, "123456789012345678901234567890");
        let back: JsonInt = serde_json::from_str(&text).unwrap();
        assert_eq!(back.0, big);
        assert!(serde_json::from_str::<JsonInt>("1.5").is_err());
    }

    #[test]
    fn round_trip_and_recheck() {
        let cert = certificate(&[2, 3, 1]);
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
        let rep = back.recheck().unwrap();
        assert!(rep.ok(), "{:?}", rep.checks);
        assert_eq!(certificate(&[2, 3, 1]).to_json(), text);
    }

    #[test]
    fn tampering_is_detected() {
        let mut cert = certificate(&[1, 1, 1]);
        cert.reduction.search_limit = 6;
        assert!(!cert.recheck().unwrap().ok());

        let mut cert = certificate(&[1, 1, 1]);
        cert.generators.push(json_ints(&[BigInt::from(0), BigInt::from(1), BigInt::from(1)]));
        assert!(!cert.recheck().unwrap().ok());

        let mut cert = certificate(&[1, 1, 1]);
        cert.reduction.regions[0].min.interval = vec!["1/2".into(), "1".into()];
        assert!(cert.recheck().is_err());
    }
}
