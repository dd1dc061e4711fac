//! Actual causation: story fixing, prevention and forcing, counterfactual
//! dependency, and actual-cause verdicts under complete information (one
//! branch) and partial information (every branch ending in an observed
//! final interpretation).

mod transform;
mod verdict;

use thiserror::Error;

use crate::engine::EngineError;
use crate::theory::Literal;

pub use transform::{fix_story, force, prevent};
pub use verdict::{
    actual_cause, classify_causes, counterfactual_dependency, default_candidates, effect_index, relevant_theory,
    Classification, PartialKind, PartialVerdict, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CausationError {
    #[error("`{0}` does not hold in the final state")]
    PreconditionNotInFinalState(String),
    #[error("a literal cannot be queried as its own cause")]
    SelfCauseQuery,
    #[error("the effect never holds along the branch")]
    EffectNeverHolds,
    #[error("branch does not belong to the theory: {0}")]
    BranchTheoryMismatch(String),
    #[error("`{0}` is exogenous and cannot be forced")]
    ExogenousForced(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Is `cause` an actual cause of `effect`? Both are literals; they must
/// differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CauseQuery {
    cause: Literal,
    effect: Literal,
}

impl CauseQuery {
    pub fn new(cause: Literal, effect: Literal) -> Result<Self, CausationError> {
        if cause == effect {
            return Err(CausationError::SelfCauseQuery);
        }
        Ok(CauseQuery { cause, effect })
    }

    pub fn cause(&self) -> Literal {
        self.cause
    }

    pub fn effect(&self) -> Literal {
        self.effect
    }
}
