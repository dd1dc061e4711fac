//! Concrete syntax: theory files, story files, formulas and contexts, the
//! canonical theory serializer, and DOT export of execution trees.
//!
//! Theory files (`.cpl`) are sequences of `.`-terminated statements:
//!
//! ```text
//! % comment
//! exogenous throws_suzy, throws_billy.
//! @suzy: shatters:0.9 <- throws_suzy.
//! shatters:4/5 <- throws_billy.          % labeled r2 implicitly
//! antidote:*.                            % unknown probability, read as 1/2
//! ```
//!
//! Story files (`.story`) give the context and then one fired law per line:
//!
//! ```text
//! context throws_suzy, throws_billy.
//! suzy -> shatters.
//! r2 -> none.
//! ```

mod dot;
mod formula_syntax;
mod lexer;
mod story;
mod theory_syntax;

use std::fmt;

use thiserror::Error;

pub use dot::export_tree_dot;
pub use formula_syntax::{parse_context, parse_formula, parse_literal};
pub use story::{parse_story, serialize_story, StoryDocument, StoryError, StoryStep};
pub use theory_syntax::{parse_theory, serialize_theory};

/// Words that cannot be used as atom names.
pub const RESERVED: &[&str] = &["exogenous", "context", "none", "true", "false"];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    Unexpected { found: String, expected: String },
    UnexpectedEnd { expected: String },
    UnknownDirective(String),
    BadProbability(String),
    ProbabilityOutOfRange(String),
    ReservedWord(String),
    UppercaseAtom(String),
    EmptyFormula,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::Unexpected { found, expected } => write!(f, "expected {expected}, found {found}"),
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::UnknownDirective(d) => write!(f, "unknown directive `{d}`"),
            ParseErrorKind::BadProbability(p) => write!(f, "malformed probability `{p}`"),
            ParseErrorKind::ProbabilityOutOfRange(p) => write!(f, "probability `{p}` is above 1"),
            ParseErrorKind::ReservedWord(w) => write!(f, "`{w}` is reserved and cannot name an atom"),
            ParseErrorKind::UppercaseAtom(a) => write!(f, "atom `{a}` must start with a lowercase letter"),
            ParseErrorKind::EmptyFormula => f.write_str("empty formula"),
        }
    }
}

/// Checks that an identifier can name an atom.
pub(crate) fn check_atom_name(name: &str) -> Result<(), ParseErrorKind> {
    if RESERVED.contains(&name) {
        return Err(ParseErrorKind::ReservedWord(name.to_string()));
    }
    if !name.starts_with(|c: char| c.is_ascii_lowercase()) {
        return Err(ParseErrorKind::UppercaseAtom(name.to_string()));
    }
    Ok(())
}
