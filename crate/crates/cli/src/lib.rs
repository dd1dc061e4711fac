//! Command-line front end for `cplogic`: validation, probabilities,
//! execution trees, and actual-causation queries over `.cpl` theories.

pub mod commands;
pub mod corpus;
mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "cplogic", version, about = "Ground CP-logic interpreter and actual-causation engine")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a theory, then list its laws.
    Validate { theory: PathBuf },
    /// Exact probability of a formula.
    Prob {
        theory: PathBuf,
        /// Formula over atoms with `!`, `&`, `|` and parentheses.
        #[arg(long)]
        query: String,
        /// Comma-separated exogenous atoms that are true.
        #[arg(long, default_value = "")]
        context: String,
    },
    /// Print an execution model (probability tree).
    Tree {
        theory: PathBuf,
        #[arg(long, default_value = "")]
        context: String,
        /// Comma-separated law labels, highest priority first.
        #[arg(long)]
        policy: Option<String>,
        /// Emit Graphviz DOT instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Complete-information query: is CAUSE an actual cause of EFFECT in a story?
    Cause {
        theory: PathBuf,
        #[arg(long)]
        story: PathBuf,
        /// Literal: `atom` or `~atom`.
        #[arg(long)]
        cause: String,
        #[arg(long)]
        effect: String,
        /// Print the effect index, T', T'', I' and the counterfactual tree.
        #[arg(long)]
        explain: bool,
    },
    /// Partial-information query: possible and certain causes given an outcome.
    Causes {
        theory: PathBuf,
        /// Comma-separated atoms true in the observed final state. When
        /// omitted, every reachable final state where the effect holds is
        /// classified in turn.
        #[arg(long)]
        outcome: Option<String>,
        #[arg(long)]
        effect: String,
        /// Exogenous atoms of the initial state; must match the outcome.
        #[arg(long)]
        context: Option<String>,
        /// Comma-separated literals to test; defaults to every literal
        /// that holds in the outcome.
        #[arg(long)]
        candidates: Option<String>,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match commands::dispatch(&cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
