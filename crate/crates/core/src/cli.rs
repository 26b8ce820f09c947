//! Command-line front end. [`run`] takes the full argument list and returns
//! the exit code and both output streams, so the binary is a thin shim and
//! tests can drive every path in-process.
//!
//! Exit codes: 0 pass, 1 property failure, 2 input error. Errors are a
//! single line of JSON on stderr: `{"error": kind, "message": text}`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::densela::{peripheral_spectrum, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::fuzz::{self, RunConfig};
use crate::rankoracle::{rank_one_criterion, sandwich, WitnessConfig};
use crate::recovery::{recover_banach_form, recover_hilbert_form, verify_preservation, Form};
use crate::{fixtures, io, products};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "periph", version, about = "Peripheral spectra of generalized matrix products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a product descriptor
    Classify { descriptor: PathBuf },
    /// Evaluate products
    #[command(subcommand)]
    Product(ProductCommand),
    /// Decide rank one through peripheral spectra of B^r A B^s
    RankTest(RankTestArgs),
    /// Check or recover preserver maps
    #[command(subcommand)]
    Map(MapCommand),
    /// Run the seeded property battery
    Fuzz(FuzzArgs),
    /// Write the fixture corpus
    Fixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProductCommand {
    /// Print a (skew) generalized product and its peripheral spectrum
    Eval {
        #[arg(long)]
        descriptor: PathBuf,
        /// JSON array of matrices, one per slot
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        skew: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct RankTestArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub skew: bool,
    /// Random rank-two samples tried when no witness exists
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Model {
    Banach,
    Hilbert,
}

#[derive(Debug, Subcommand)]
pub enum MapCommand {
    /// Sample operand tuples and compare peripheral spectra
    Verify {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long)]
        skew: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Fit a standard form to a map table
    Recover {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long = "max-dim", default_value_t = 5)]
    pub max_dim: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report<T: Serialize>(code: i32, value: &T) -> Self {
        Self { code, stdout: io::to_pretty(value), stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        Self::error_kind(e.kind(), &e.to_string())
    }

    fn error_kind(kind: &str, message: &str) -> Self {
        let line = io::to_line(&json!({ "error": kind, "message": message }));
        Self { code: EXIT_INPUT, stdout: String::new(), stderr: line + "\n" }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_PASS, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("invalid arguments");
                    Outcome::error_kind("usage", first.trim_start_matches("error: "))
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::error(&e),
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Classify { descriptor } => classify(&descriptor),
        Command::Product(ProductCommand::Eval { descriptor, ops, skew, tol }) => product_eval(&descriptor, &ops, skew, tol),
        Command::RankTest(args) => rank_test(&args),
        Command::Map(MapCommand::Verify { map, descriptor, skew, trials, seed, tol }) => {
            let phi = io::read_map(&map)?;
            let d = io::read_descriptor(&descriptor)?;
            let out = verify_preservation(&phi, &d, trials, skew, tol, seed)?;
            let code = if out.preserved { EXIT_PASS } else { EXIT_PROPERTY };
            Ok(Outcome::report(code, &out))
        }
        Command::Map(MapCommand::Recover { map, model, m, tol }) => {
            let phi = io::read_map(&map)?;
            let rep = match model {
                Model::Banach => recover_banach_form(&phi, m, tol)?,
                Model::Hilbert => recover_hilbert_form(&phi, m, tol)?,
            };
            let code = if rep.form == Form::NonStandard { EXIT_PROPERTY } else { EXIT_PASS };
            Ok(Outcome::report(code, &rep))
        }
        Command::Fuzz(args) => fuzz_cmd(&args),
        Command::Fixtures { out } => {
            let written = fixtures::write_all(&out)?;
            let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            Ok(Outcome::report(EXIT_PASS, &json!({ "written": names })))
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("tol must be positive and finite, got {tol}")))
    }
}

fn classify(path: &Path) -> Result<Outcome> {
    let d = io::read_descriptor(path)?;
    Ok(Outcome::report(EXIT_PASS, &d.classification_json()))
}

fn product_eval(descriptor: &Path, ops: &Path, skew: bool, tol: f64) -> Result<Outcome> {
    check_tol(tol)?;
    let d = io::read_descriptor(descriptor)?;
    let ops = io::read_operands(ops)?;
    let prod = if skew { products::evaluate_skew(&d, &ops)? } else { products::evaluate(&d, &ops)? };
    let sp = peripheral_spectrum(&prod, tol)?;
    Ok(Outcome::report(
        EXIT_PASS,
        &json!({
            "skew": skew,
            "product": prod,
            "peripheral_spectrum": { "points": sp.to_pairs(), "radius": sp.radius() },
        }),
    ))
}

fn rank_test(args: &RankTestArgs) -> Result<Outcome> {
    check_tol(args.tol)?;
    let a = io::read_matrix(&args.matrix)?;
    let cfg = WitnessConfig { tol: args.tol, seed: args.seed, ..WitnessConfig::default() };
    let rep = rank_one_criterion(&a, args.r, args.s, args.skew, args.samples, &cfg)?;
    let target = if args.skew { a.adjoint() } else { a };
    let body = match (&rep.witness, &rep.sampled_counterexample) {
        (Some(w), _) => json!({
            "rank_one": false,
            "witness": w.witness,
            "case": w.case,
            "spectrum": w.spectrum.to_pairs(),
        }),
        (None, Some(b)) => {
            let sp = peripheral_spectrum(&sandwich(b, &target, args.r, args.s), args.tol)?;
            json!({ "rank_one": false, "witness": b, "case": "random-sample", "spectrum": sp.to_pairs() })
        }
        (None, None) => json!({
            "rank_one": true,
            "witness": null,
            "case": null,
            "spectrum": [],
            "samples_checked": rep.samples_checked,
        }),
    };
    Ok(Outcome::report(EXIT_PASS, &body))
}

fn fuzz_cmd(args: &FuzzArgs) -> Result<Outcome> {
    let cfg = RunConfig {
        seed: args.seed,
        tol: args.tol,
        trials: args.trials,
        max_dim: args.max_dim,
        output_path: args.out.as_ref().map(|p| p.display().to_string()),
    };
    let summary = fuzz::run(&cfg)?;
    if let Some(path) = &args.out {
        io::write_json(path, &summary)?;
    }
    let code = if summary.all_passed { EXIT_PASS } else { EXIT_PROPERTY };
    Ok(Outcome::report(code, &summary))
}
