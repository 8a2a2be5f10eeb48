//! Plain-text proof documents: the structure is THEOREM, PROOF, invariance
//! check, backward formula, dehomogenized cubic, one bound per region, the
//! search conclusion and Q.E.D.

use std::fmt::Write;

use super::pipeline::{Derivation, Outcome};
use crate::exact::{to_fraction_string, AlgebraicNumber};
use crate::invariant::{format_tuple, AdmissibilityReport, Recurrence};
use crate::mpoly::MultiPoly;
use crate::reduction::{dehomogenize, BoundReport, MinReport};

/// Number of significant digits in decimal bounds.
pub const BOUND_DIGITS: usize = 10;

fn exact_text(x: &AlgebraicNumber) -> String {
    x.radical_form().unwrap_or_else(|| {
        let (lo, hi) = x.interval();
        format!(
            "the root of {} in [{}, {}]",
            x.defining().render("X"),
            to_fraction_string(lo),
            to_fraction_string(hi)
        )
    })
}

/// `z - a*y - b*x` for `(a, b, 1)`.
fn backward_formula(rec: &Recurrence) -> String {
    let (a, b) = rec.ab().expect("order 3");
    let vars = ["x", "y", "z"];
    let v = |name| MultiPoly::var(&vars, name).expect("known variable");
    let p = v("z") - v("y").scale(&a) - v("x").scale(&b);
    p.render()
}

/// The linear form `1 - a*s - b*t`, the backward step divided by `z`.
fn step_form(r: &MinReport) -> String {
    r.region.constraints()[0].form.to_poly().render()
}

fn theorem(out: &mut String, heading: &str, rec: &Recurrence, p: &MultiPoly) {
    let _ = writeln!(
        out,
        "{heading}. The nonnegative, increasing solutions of the Diophantine equation\n"
    );
    let _ = writeln!(out, "    {} = 1\n", p.render());
    let _ = writeln!(out, "are generated by applying the recurrence {rec}");
    let _ = writeln!(out, "to finitely many initial solutions.\n");
}

fn cubic_section(out: &mut String, p: &MultiPoly) {
    let f = dehomogenize(p).expect("order-3 invariant is a ternary cubic");
    let _ = writeln!(
        out,
        "Divide both sides of the equation by z^3 and set t = x/z, s = y/z. This gives\n"
    );
    let _ = writeln!(out, "    {} = 1/z^3\n", f.render());
    let _ = writeln!(out, "where (t, s) lies in the unit square.\n");
}

fn region_section(out: &mut String, rec: &Recurrence, index: usize, r: &MinReport) {
    let back = backward_formula(rec);
    let form = step_form(r);
    let (claim, plane) = if index == 0 {
        (format!("0 < {back}"), format!("0 < {form}"))
    } else {
        (format!("{back} < x"), format!("{form} < t"))
    };
    let _ = writeln!(out, "Region {}. The inequality {claim},", index + 1);
    let _ = writeln!(out, "equivalently {plane}, can only fail where f >= m with");
    let _ = writeln!(out, "    m = {}", exact_text(&r.minimum));
    let _ = writeln!(
        out,
        "      ~ {}  (exact minimum of f over {{{}}})",
        r.minimum.to_decimal(BOUND_DIGITS),
        r.region
            .constraints()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        out,
        "    attained at (t, s) ~ ({}, {}).",
        r.witness.0.to_decimal(BOUND_DIGITS),
        r.witness.1.to_decimal(BOUND_DIGITS)
    );
    match r.inv_cuberoot() {
        Some(bound) => {
            let _ = writeln!(out, "Since f = 1/z^3, the inequality holds for\n");
            let _ = writeln!(out, "    z > 1/({})^(1/3)", exact_text(&r.minimum));
            let _ = writeln!(out, "\nmore explicitly for\n");
            let _ = writeln!(out, "    z > {}\n", bound.to_decimal(BOUND_DIGITS));
        }
        None => {
            let _ = writeln!(out, "This minimum is not positive, so no bound on z follows.\n");
        }
    }
}

/// Proof of the generator theorem for a completed derivation.
pub fn render_proof(d: &Derivation) -> String {
    let mut out = String::new();
    theorem(&mut out, "THEOREM", &d.recurrence, &d.polynomial);
    let _ = writeln!(out, "PROOF. Let P be the polynomial on the left-hand side.\n");
    let _ = writeln!(out, "Invariance check. P is invariant under the recurrence:\n");
    let verdict = if d.invariance_verified { "0" } else { "NONZERO" };
    let _ = writeln!(out, "    P - P(shift) = {verdict}\n");
    let _ = writeln!(
        out,
        "The backward shift formula giving the previous term from the window (x, y, z) is\n"
    );
    let _ = writeln!(out, "    {}\n", backward_formula(&d.recurrence));
    let _ = writeln!(
        out,
        "We show that the backward shift gives a smaller increasing solution for\nsufficiently large z.\n"
    );
    cubic_section(&mut out, &d.polynomial);
    let _ = writeln!(out, "Let (x, y, z) be a solution and f the cubic above.\n");
    for (i, r) in d.bound.per_region.iter().enumerate() {
        region_section(&mut out, &d.recurrence, i, r);
    }
    let binding = d.bound.binding.expect("method applies");
    let bound = d.bound.per_region[binding]
        .inv_cuberoot()
        .expect("positive minimum");
    let _ = writeln!(
        out,
        "Search conclusion. We only need to look for solutions with z < {}, that is\nz <= {}, and there are finitely many of these. The exhaustive search finds {}\nsolution(s), all generated by\n",
        bound.to_decimal(BOUND_DIGITS),
        d.bound.search_limit - 1,
        d.solutions.solutions.len()
    );
    let gens: Vec<String> = d.generators.generators.iter().map(|g| format_tuple(g)).collect();
    let _ = writeln!(out, "    {{{}}}\n", gens.join(", "));
    let _ = writeln!(out, "Q.E.D.");
    out
}

/// Explanation of why the method does not go through.
pub fn render_failure(
    rec: &Recurrence,
    p: &MultiPoly,
    adm: &AdmissibilityReport,
    bound: Option<&BoundReport>,
) -> String {
    let mut out = String::new();
    theorem(&mut out, "CLAIM", rec, p);
    let _ = writeln!(out, "FAILURE. The method does not go through for {rec}.\n");
    let mut count = 0;
    for reason in &adm.reasons {
        count += 1;
        let _ = writeln!(out, "{count}. {reason}.");
    }
    if let Some(bound) = bound {
        for (i, r) in bound.per_region.iter().enumerate() {
            if !r.positive {
                count += 1;
                let _ = writeln!(
                    out,
                    "{count}. Region {}: the minimum of f over {{{}}} is {} ~ {}, which is not\n   positive, so no search bound follows.",
                    i + 1,
                    r.region
                        .constraints()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                    exact_text(&r.minimum),
                    r.minimum.to_decimal(BOUND_DIGITS)
                );
            }
        }
    }
    out.push('\n');
    cubic_section(&mut out, p);
    let _ = writeln!(out, "No conclusion is drawn.");
    out
}

/// Proof or failure narrative for any pipeline outcome.
pub fn render_outcome(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Complete(d) => render_proof(d),
        Outcome::Inadmissible {
            recurrence,
            polynomial,
            admissibility,
            bound,
        } => render_failure(recurrence, polynomial, admissibility, bound.as_ref()),
        Outcome::MethodFailed {
            recurrence,
            polynomial,
            admissibility,
            bound,
        } => render_failure(recurrence, polynomial, admissibility, Some(bound)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::pipeline::run_pipeline;
    use crate::invariant::validate_i64;

    fn proof(c: &[i64]) -> String {
        render_outcome(&run_pipeline(&validate_i64(c).unwrap()).unwrap())
    }

    #[test]
    fn sections_in_order() {
        let doc = proof(&[2, 3, 1]);
        let keys = [
            "THEOREM.",
            "PROOF.",
            "P - P(shift) = 0",
            "-3*x - 2*y + z",
            "7*s^3 + 11*s^2*t + 6*s*t^2 + t^3 + s^2 + 3*s*t + 2*t^2 - 4*s - 3*t + 1 = 1/z^3",
            "Region 1.",
            "(50371 - 1718*sqrt(859))/81675",
            "z > 16.36065832",
            "Region 2.",
            "(3703 - 106*sqrt(1219))/4968",
            "z > 13.33123044",
            "z < 16.36065832",
            "{(0, 0, 1), (0, 1, 3), (0, 2, 5), (1, 1, 4)}",
            "Q.E.D.",
        ];
        let mut at = 0;
        for k in keys {
            let pos = doc[at..].find(k).unwrap_or_else(|| panic!("missing {k:?} in\n{doc}"));
            at += pos + k.len();
        }
    }

    #[test]
    fn tribonacci_bound() {
        let doc = proof(&[1, 1, 1]);
        assert!(doc.contains("(398 - 68*sqrt(34))/27"), "{doc}");
        assert!(doc.contains("z > 2.623"), "{doc}");
    }

    #[test]
    fn failure_narrative() {
        let doc = proof(&[1, 3, 1]);
        assert!(doc.starts_with("CLAIM."));
        assert!(doc.contains("FAILURE."));
        assert!(doc.contains("(X + 1)*(X^2 - 2*X - 1)"));
        assert!(doc.contains("rational root -1"));
        assert!(doc.contains("not\n   positive"), "{doc}");
        assert!(!doc.contains("Q.E.D."));
    }
}
