use crate::error::Result;
use crate::invariant::{
    build_invariant, check_invariance, is_admissible, AdmissibilityReport, Recurrence,
};
use crate::mpoly::MultiPoly;
use crate::reduction::{derive_bound, BoundReport};
use crate::solver::{classify_generators, enumerate_below, GeneratorSet, SolutionSet};

/// Every intermediate result of the decision procedure for `(a, b, 1)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub recurrence: Recurrence,
    pub polynomial: MultiPoly,
    pub invariance_verified: bool,
    pub admissibility: AdmissibilityReport,
    pub bound: BoundReport,
    pub solutions: SolutionSet,
    pub generators: GeneratorSet,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Complete(Box<Derivation>),
    /// The characteristic polynomial is reducible or lacks a dominant root.
    /// The bound is still computed, for the failure narrative.
    Inadmissible {
        recurrence: Recurrence,
        polynomial: MultiPoly,
        admissibility: AdmissibilityReport,
        bound: Option<BoundReport>,
    },
    /// Some region minimum is not positive, so no search limit exists.
    MethodFailed {
        recurrence: Recurrence,
        polynomial: MultiPoly,
        admissibility: AdmissibilityReport,
        bound: BoundReport,
    },
}

/// Admissibility, exact region minima and search limit, enumeration below
/// the limit, generator classification.
pub fn run_pipeline(rec: &Recurrence) -> Result<Outcome> {
    let polynomial = build_invariant(rec);
    let admissibility = is_admissible(rec)?;
    if !admissibility.admissible() {
        let bound = derive_bound(rec, &polynomial).ok();
        return Ok(Outcome::Inadmissible {
            recurrence: rec.clone(),
            polynomial,
            admissibility,
            bound,
        });
    }
    let bound = derive_bound(rec, &polynomial)?;
    if !bound.method_ok {
        return Ok(Outcome::MethodFailed {
            recurrence: rec.clone(),
            polynomial,
            admissibility,
            bound,
        });
    }
    let invariance_verified = check_invariance(rec, &polynomial);
    let solutions = enumerate_below(&polynomial, bound.search_limit)?;
    let generators = classify_generators(rec, &solutions)?;
    Ok(Outcome::Complete(Box::new(Derivation {
        recurrence: rec.clone(),
        polynomial,
        invariance_verified,
        admissibility,
        bound,
        solutions,
        generators,
    })))
}
