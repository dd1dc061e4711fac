//! Ground CP-logic: exact probabilistic semantics via execution models
//! (probability trees) and actual-causation queries over their branches.
//!
//! ```
//! use cplogic::{parse_theory, validate_theory, parse_formula, prob_formula, Interpretation};
//!
//! let src = "exogenous throws_suzy, throws_billy.\n\
//!            shatters:0.9 <- throws_suzy.\n\
//!            shatters:0.8 <- throws_billy.\n";
//! let theory = validate_theory(parse_theory(src).unwrap()).unwrap();
//! let ctx: Interpretation = ["throws_suzy", "throws_billy"].iter().map(|n| theory.atom(n).unwrap()).collect();
//! let query = parse_formula("shatters").unwrap().resolve(theory.vocab()).unwrap();
//! assert_eq!(prob_formula(&theory, &ctx, &query).unwrap().to_string(), "49/50");
//! ```

pub mod causation;
pub mod depgraph;
pub mod engine;
pub mod formula;
pub mod prob;
pub mod random;
pub mod textio;
pub mod theory;

pub use causation::{
    actual_cause, classify_causes, counterfactual_dependency, default_candidates, effect_index, fix_story, force,
    prevent, relevant_theory, CausationError, CauseQuery, Classification, PartialKind, PartialVerdict, Verdict,
};
pub use depgraph::{negation_loop_check, LoopCheck};
pub use engine::{
    build_tree, distribution, enumerate_branches, prob_formula, replay_story, Branch, CanonicalOrder, Distribution,
    EngineError, Event, EventPolicy, ExecutionTree, LawStatus, Outcome, PriorityOrder, State,
};
pub use formula::{eval_formula, Formula};
pub use prob::Probability;
pub use textio::{
    export_tree_dot, parse_context, parse_formula, parse_literal, parse_story, parse_theory, serialize_story,
    serialize_theory, ParseError, StoryDocument, StoryError,
};
pub use theory::{
    validate_theory, Atom, CpLaw, HeadAlternative, Interpretation, LawId, Literal, Theory, TheoryCandidate,
    ValidationError, Vocabulary,
};
