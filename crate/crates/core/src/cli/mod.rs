//! Command-line front end. [`run`] parses arguments, dispatches and returns
//! the process exit code.

pub mod certificate;
pub mod pipeline;
pub mod plot;
pub mod proof;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::error::Error;
use crate::invariant::{build_invariant, check_invariance, format_tuple, validate, Recurrence};
use crate::solver::{
    brute_force_verify, enumerate_below, exploratory_generators, orbit, GeneratorSet,
};
use certificate::{polynomial_json, recurrence_json, Certificate};
use pipeline::{run_pipeline, Outcome};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    Internal = 1,
    Inadmissible = 2,
    MethodFailure = 3,
    BadInput = 4,
    VerificationFailure = 5,
}

impl ExitCode {
    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Constraint(_) | Error::Unsupported(_) | Error::Domain(_) => {
                ExitCode::BadInput
            }
            Error::Completeness(_) | Error::Budget(_) | Error::Internal(_) => ExitCode::Internal,
        }
    }
}

/// Comma-separated integers, e.g. `2,3,1`.
#[derive(Clone, Debug)]
struct IntList(Vec<BigInt>);

fn parse_int_list(text: &str) -> Result<IntList, String> {
    text.split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<BigInt>()
                .map_err(|_| format!("{p:?} is not an integer"))
        })
        .collect::<Result<_, _>>()
        .map(IntList)
}

#[derive(Parser, Debug)]
#[command(
    name = "diorec",
    version,
    about = "Diophantine equations whose solutions are linear-recurrence orbits"
)]
struct Cli {
    /// Also write a machine-readable result to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Suppress the text report on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Coeffs {
    /// Recurrence coefficients c1,...,cd; the last must be (-1)^(d+1).
    #[arg(long, value_parser = parse_int_list, allow_hyphen_values = true)]
    coeffs: IntList,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the invariant polynomial of a recurrence.
    Derive(Coeffs),
    /// Run the decision procedure and print the search limit and generators.
    AllSolns(Coeffs),
    /// Render a plain-text proof.
    Prove {
        #[command(flatten)]
        coeffs: Coeffs,
        /// Write the proof here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Find every solution in a cube and explain it by generator orbits.
    Verify {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        radius: u64,
        /// Take generators from a plain enumeration instead of the proved
        /// search limit; works for any order.
        #[arg(long)]
        exploratory: bool,
    },
    /// Print orbit windows around a seed.
    Orbit {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, value_parser = parse_int_list, allow_hyphen_values = true)]
        seed: IntList,
        #[arg(long, default_value_t = 0)]
        back: usize,
        #[arg(long, default_value_t = 0)]
        forward: usize,
    },
    /// Emit the plane vector field as CSV.
    PlotData {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate written by `all-solns --json`.
    Check {
        #[arg(long, value_name = "PATH")]
        cert: PathBuf,
    },
}

/// Text and JSON channels of one invocation.
struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    quiet: bool,
    json: Option<PathBuf>,
}

impl Io<'_> {
    fn say(&mut self, text: &str) {
        if !self.quiet {
            let _ = self.out.write_all(text.as_bytes());
        }
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "{text}");
    }

    fn emit_json(&mut self, text: &str) -> Result<(), Error> {
        match &self.json {
            Some(path) => write_file(path, text),
            None => Ok(()),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    ExitCode::Success as i32
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    ExitCode::BadInput as i32
                }
            };
        }
    };
    let mut io = Io {
        out,
        err,
        quiet: cli.quiet,
        json: cli.json,
    };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code as i32,
        Err(e) => {
            io.warn(&format!("error: {e}"));
            ExitCode::for_error(&e) as i32
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<ExitCode, Error> {
    match cmd {
        Command::Derive(c) => derive(&validate(&c.coeffs.0)?, io),
        Command::AllSolns(c) => all_solns(&validate(&c.coeffs.0)?, io),
        Command::Prove { coeffs, out } => prove(&validate(&coeffs.coeffs.0)?, out.as_deref(), io),
        Command::Verify {
            coeffs,
            radius,
            exploratory,
        } => verify(&validate(&coeffs.coeffs.0)?, radius, exploratory, io),
        Command::Orbit {
            coeffs,
            seed,
            back,
            forward,
        } => orbit_cmd(&validate(&coeffs.coeffs.0)?, &seed.0, back, forward, io),
        Command::PlotData { coeffs, grid, out } => {
            let csv = plot::plot_csv(&validate(&coeffs.coeffs.0)?, grid)?;
            match out {
                Some(path) => write_file(&path, &csv)?,
                None => io.say(&csv),
            }
            Ok(ExitCode::Success)
        }
        Command::Check { cert } => check(&cert, io),
    }
}

fn derive(rec: &Recurrence, io: &mut Io) -> Result<ExitCode, Error> {
    let p = build_invariant(rec);
    io.say(&format!("{}\n", p.render()));
    io.emit_json(&pretty(&json!({
        "recurrence": recurrence_json(rec),
        "polynomial": polynomial_json(&p),
        "invariance_verified": check_invariance(rec, &p),
    })))?;
    Ok(ExitCode::Success)
}

/// Reports a non-complete outcome on stderr and returns its exit code.
fn report_failure(outcome: &Outcome, io: &mut Io) -> ExitCode {
    match outcome {
        Outcome::Complete(_) => ExitCode::Success,
        Outcome::Inadmissible { admissibility, .. } => {
            io.warn(&format!("inadmissible: {}", admissibility.reasons.join("; ")));
            ExitCode::Inadmissible
        }
        Outcome::MethodFailed { bound, .. } => {
            let bad: Vec<String> = bound
                .per_region
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.positive)
                .map(|(i, r)| format!("region {} minimum {}", i + 1, r.minimum.to_decimal(10)))
                .collect();
            io.warn(&format!("method fails: nonpositive {}", bad.join(", ")));
            ExitCode::MethodFailure
        }
    }
}

fn generator_text(gens: &GeneratorSet) -> String {
    let items: Vec<String> = gens.generators.iter().map(|g| format_tuple(g)).collect();
    format!("{{{}}}", items.join(", "))
}

fn all_solns(rec: &Recurrence, io: &mut Io) -> Result<ExitCode, Error> {
    let outcome = run_pipeline(rec)?;
    let Outcome::Complete(d) = &outcome else {
        return Ok(report_failure(&outcome, io));
    };
    io.say(&format!(
        "looking for nonnegative increasing solutions up to {}\n{}\n",
        d.bound.search_limit,
        generator_text(&d.generators)
    ));
    io.emit_json(&Certificate::from_derivation(d).to_json())?;
    Ok(ExitCode::Success)
}

fn prove(rec: &Recurrence, out: Option<&Path>, io: &mut Io) -> Result<ExitCode, Error> {
    let outcome = run_pipeline(rec)?;
    let doc = proof::render_outcome(&outcome);
    match out {
        Some(path) => write_file(path, &doc)?,
        None => io.say(&doc),
    }
    if let Outcome::Complete(d) = &outcome {
        io.emit_json(&Certificate::from_derivation(d).to_json())?;
    }
    Ok(report_failure(&outcome, io))
}

fn verify(rec: &Recurrence, radius: u64, exploratory: bool, io: &mut Io) -> Result<ExitCode, Error> {
    let generators = if exploratory {
        let set = enumerate_below(&build_invariant(rec), radius + 1)?;
        exploratory_generators(rec, &set)
    } else {
        let outcome = run_pipeline(rec)?;
        match outcome {
            Outcome::Complete(d) => d.generators,
            other => return Ok(report_failure(&other, io)),
        }
    };
    let report = brute_force_verify(rec, radius, &generators)?;
    let mut text = format!(
        "radius {}: {} solutions, {} explained, {} unexplained\ngenerators: {}\n",
        radius,
        report.solutions.len(),
        report.memberships.len(),
        report.unexplained.len(),
        generator_text(&generators)
    );
    for m in &report.memberships {
        text.push_str(&format!(
            "  {} = R^{} {}\n",
            format_tuple(&m.tuple),
            m.step,
            format_tuple(&report.generators[m.generator])
        ));
    }
    io.say(&text);
    let tuples = |v: &[Vec<BigInt>]| -> Vec<serde_json::Value> {
        v.iter()
            .map(|t| json!(t.iter().map(|x| certificate::JsonInt(x.clone())).collect::<Vec<_>>()))
            .collect()
    };
    io.emit_json(&pretty(&json!({
        "recurrence": recurrence_json(rec),
        "radius": radius,
        "exploratory": exploratory,
        "generators": tuples(&report.generators),
        "solutions": tuples(&report.solutions),
        "memberships": report.memberships.iter().map(|m| json!({
            "tuple": tuples(std::slice::from_ref(&m.tuple))[0],
            "generator": m.generator,
            "step": m.step,
        })).collect::<Vec<_>>(),
        "unexplained": tuples(&report.unexplained),
        "all_explained": report.all_explained(),
    })))?;
    if report.all_explained() {
        Ok(ExitCode::Success)
    } else {
        let bad: Vec<String> = report.unexplained.iter().map(|t| format_tuple(t)).collect();
        io.warn(&format!("unexplained solutions: {}", bad.join(", ")));
        Ok(ExitCode::VerificationFailure)
    }
}

fn orbit_cmd(
    rec: &Recurrence,
    seed: &[BigInt],
    back: usize,
    forward: usize,
    io: &mut Io,
) -> Result<ExitCode, Error> {
    if seed.len() != rec.order() {
        return Err(Error::InvalidInput(format!(
            "seed has {} entries, the recurrence has order {}",
            seed.len(),
            rec.order()
        )));
    }
    let windows = orbit(rec, seed, back, forward);
    let text: String = windows.iter().map(|w| format_tuple(w) + "\n").collect();
    io.say(&text);
    let rows: Vec<Vec<certificate::JsonInt>> = windows
        .iter()
        .map(|w| w.iter().cloned().map(certificate::JsonInt).collect())
        .collect();
    io.emit_json(&pretty(&json!({
        "recurrence": recurrence_json(rec),
        "windows": rows,
    })))?;
    Ok(ExitCode::Success)
}

fn check(path: &Path, io: &mut Io) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let report = Certificate::from_json(&text)?.recheck()?;
    let lines: String = report
        .checks
        .iter()
        .map(|(claim, ok)| format!("{} {claim}\n", if *ok { "ok  " } else { "FAIL" }))
        .collect();
    io.say(&lines);
    io.emit_json(&pretty(&json!({
        "checks": report.checks.iter().map(|(c, ok)| json!({"claim": c, "ok": ok})).collect::<Vec<_>>(),
        "ok": report.ok(),
    })))?;
    Ok(if report.ok() {
        ExitCode::Success
    } else {
        ExitCode::VerificationFailure
    })
}
