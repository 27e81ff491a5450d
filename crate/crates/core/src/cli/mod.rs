//! Command-line driver: `check`, `convert`, `zero-iso` and `fixture`.
//!
//! Exit codes: 0 when everything checked passes, 1 on a semantic failure
//! (an axiom or a precondition fails), 2 on unusable input.

mod commands;
pub mod document;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::error::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coherence", version, about = "Check coherence axioms of finite 2-groups and 2-rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an axiom suite on a structure document.
    Check(CheckArgs),
    /// Switch every sum structure (and 2-ring) to the other presentation.
    Convert(ConvertArgs),
    /// Compute or enumerate zero isomorphisms of a functor.
    ZeroIso(ZeroIsoArgs),
    /// Write a built-in example document.
    Fixture(FixtureArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sm,
    Ac,
    #[value(name = "2group")]
    TwoGroup,
    SmFunctor,
    AcFunctor,
    Transformation,
    Quang,
    Jp,
    Acring,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Structure id (sum, 2-ring or transformation) to check; defaults to the first fitting one.
    #[arg(long)]
    pub structure: Option<String>,
    /// Functor id for the functor suites.
    #[arg(long)]
    pub functor: Option<String>,
    /// Print both composite paths leg by leg for every failure.
    #[arg(long)]
    pub witness: bool,
    /// Worker threads per instance scan.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    /// Evaluate every instance even for identity families.
    #[arg(long)]
    pub thorough: bool,
    /// Also report groupoid, bifunctor and naturality checks.
    #[arg(long)]
    pub preflight: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Presentation {
    Ac,
    Sm,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub to: Presentation,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZeroIsoMode {
    Canonical,
    Enumerate,
}

#[derive(Debug, Args)]
pub struct ZeroIsoArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub functor: Option<String>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub mode: ZeroIsoMode,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    /// dual-numbers, super-line, strict-2ring or dual-2ring.
    pub name: String,
    #[arg(long = "mod")]
    pub modulus: Option<u32>,
    /// Multiplier `a,b` for dual-numbers.
    #[arg(long)]
    pub mult: Option<String>,
    /// Ring for strict-2ring: zN or dualM.
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                Error::PreconditionFailed { .. }
                | Error::NoInverse(_)
                | Error::UnitorMismatch { .. }
                | Error::MissingZeroIso
                | Error::MissingAbsorbers
                | Error::NotInvertible(_) => EXIT_FAIL,
                _ => EXIT_INPUT,
            },
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(a) => commands::check(a, out, err),
        Command::Convert(a) => commands::convert(a, out),
        Command::ZeroIso(a) => commands::zero_iso(a, out),
        Command::Fixture(a) => commands::fixture(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
