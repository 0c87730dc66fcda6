//! Command-line front end for the `vgit` library: reads a JSON weight-system
//! document and renders deterministic reports as JSON, tables or DOT.

pub mod commands;
pub mod input;
pub mod render;

use clap::{Parser, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VIOLATIONS: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_SCHEMA,
            message: message.into(),
        }
    }
}

impl From<vgit::Error> for CliError {
    fn from(e: vgit::Error) -> Self {
        let code = match e {
            vgit::Error::Input(_) => EXIT_SCHEMA,
            vgit::Error::Resource(_) => EXIT_RESOURCE,
            vgit::Error::Precondition(_) => EXIT_INTERNAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Fan,
    Strata,
    Walls,
    Chambers,
    Nilcone,
    Fiber,
    Poset,
    Verify,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "vgit",
    about = "Variation of GIT quotients for torus actions, in exact arithmetic"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Input document, or `-` for stdin.
    #[arg(long)]
    pub input: String,
    /// Linearization as comma-separated rationals, e.g. `1/2,-3`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Overrides `options.degree_bound`.
    #[arg(long)]
    pub degree_bound: Option<i64>,
    /// Nilcone component index, or `i,j` for the intersection of two.
    #[arg(long)]
    pub component: Option<String>,
    /// Sign of the first coordinate used to grade fibers.
    #[arg(long, default_value = "+", value_parser = ["+", "-"], allow_hyphen_values = true)]
    pub grading: String,
}

/// Runs a command on a document text, returning the rendered output and
/// the exit code.
pub fn run(args: &Args, text: &str) -> Result<(String, i32), CliError> {
    let doc = input::parse(text)?;
    let loaded = doc.load()?;
    let report = commands::execute(&loaded, args)?;
    let out = render::render(&report, args.format)?;
    let code = if report.violations > 0 {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    };
    Ok((out, code))
}
