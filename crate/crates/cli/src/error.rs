use std::fmt;

use cplogic::{CausationError, EngineError, ParseError, StoryError, ValidationError};

/// A failed command. The variant determines the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit code 1: the input text is malformed.
    Parse(String),
    /// Exit code 2: well-formed input that is not a valid theory, or a
    /// query that does not fit the theory.
    Semantic(String),
    /// Exit code 3: a causal query whose preconditions do not hold.
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Semantic(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    pub fn parse_in(file: &str, e: ParseError) -> Self {
        CliError::Parse(format!("{file}:{e}"))
    }

    pub fn validation(file: &str, errors: Vec<ValidationError>) -> Self {
        let lines: Vec<String> = errors.iter().map(|e| format!("{file}: {e}")).collect();
        CliError::Semantic(lines.join("\n"))
    }

    pub fn story(file: &str, e: StoryError) -> Self {
        match e {
            StoryError::Parse(p) => CliError::parse_in(file, p),
            other => CliError::Semantic(format!("{file}: {other}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Semantic(m) | CliError::Precondition(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<CausationError> for CliError {
    fn from(e: CausationError) -> Self {
        match e {
            CausationError::Engine(e) => e.into(),
            CausationError::BranchTheoryMismatch(_) => CliError::Semantic(e.to_string()),
            CausationError::PreconditionNotInFinalState(_)
            | CausationError::SelfCauseQuery
            | CausationError::EffectNeverHolds
            | CausationError::ExogenousForced(_) => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}
