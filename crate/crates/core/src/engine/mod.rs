//! Execution-model semantics: states and the overestimate used for
//! negation, law statuses, probability trees, branch enumeration, story
//! replay and exact probabilities.

mod branch;
mod state;
mod tree;

use thiserror::Error;

pub use branch::{enumerate_branches, replay_story, Branch, Branches, Event};
pub use state::{
    applicable_laws, fire, initial_state, law_status, outcome_probability, outcomes, overestimate, LawStatus, Outcome,
    State,
};
pub use tree::{
    build_tree, build_tree_from, distribution, prob_formula, CanonicalOrder, Distribution, Edge, EventPolicy,
    ExecutionTree, Expansion, PriorityOrder, TreeNode,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("context atom `{0}` is not exogenous")]
    NonExogenousInContext(String),
    #[error("law {law} is {status}, not applicable")]
    NotApplicable { law: String, status: LawStatus },
    #[error("`{outcome}` is not a possible outcome of law {law}")]
    InvalidOutcome { law: String, outcome: String },
    #[error("step {step}: law {law} is {status}, not applicable")]
    IllegalStep { step: usize, law: String, status: LawStatus },
    #[error("unknown law label `{0}`")]
    UnknownLabel(String),
}
