use crate::engine::state::{
    applicable_laws, fire, initial_state, law_status, outcome_probability, outcomes, LawStatus, Outcome, State,
};
use crate::engine::EngineError;
use crate::prob::Probability;
use crate::textio::StoryDocument;
use crate::theory::{Interpretation, LawId, Theory};

/// One transition of a branch: law `law` happened with `outcome`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub law: LawId,
    pub outcome: Outcome,
    pub prob: Probability,
}

/// A path `s0 .. sn` through an execution model together with the events
/// that produced each transition (`events.len() == states.len() - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub states: Vec<State>,
    pub events: Vec<Event>,
}

impl Branch {
    pub fn root(state: State) -> Branch {
        Branch { states: vec![state], events: Vec::new() }
    }

    pub fn first(&self) -> &State {
        &self.states[0]
    }

    pub fn last(&self) -> &State {
        self.states.last().expect("a branch has at least one state")
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn probability(&self) -> Probability {
        self.events.iter().map(|e| e.prob.clone()).product()
    }

    /// True when no law is applicable in the final state.
    pub fn is_complete(&self, theory: &Theory) -> bool {
        applicable_laws(theory, self.last()).is_empty()
    }

    fn extended(&self, state: State, event: Event) -> Branch {
        let mut b = self.clone();
        b.states.push(state);
        b.events.push(event);
        b
    }

    pub fn display<'a>(&'a self, theory: &'a Theory) -> impl std::fmt::Display + 'a {
        crate::theory::DisplayWith(move |f: &mut std::fmt::Formatter<'_>| {
            write!(f, "{}", self.first().interp.display(theory.vocab()))?;
            for (ev, s) in self.events.iter().zip(&self.states[1..]) {
                write!(
                    f,
                    " --{}:{}--> {}",
                    theory.law(ev.law).label,
                    ev.outcome.display(theory),
                    s.interp.display(theory.vocab())
                )?;
            }
            Ok(())
        })
    }
}

/// Depth-first enumeration of every branch of every execution model: at
/// each state, every applicable law and every one of its outcomes.
///
/// With a target interpretation, a state is pruned as soon as it holds an
/// atom outside the target, or some missing target atom has left the
/// overestimate; only branches whose final interpretation equals the
/// target are yielded.
pub fn enumerate_branches<'t>(
    theory: &'t Theory,
    context: &Interpretation,
    target: Option<&Interpretation>,
) -> Result<Branches<'t>, EngineError> {
    let root = initial_state(theory, context)?;
    let mut it = Branches { theory, target: target.cloned(), stack: Vec::new() };
    if it.admissible(&root) {
        it.stack.push(Branch::root(root));
    }
    Ok(it)
}

pub struct Branches<'t> {
    theory: &'t Theory,
    target: Option<Interpretation>,
    stack: Vec<Branch>,
}

impl Branches<'_> {
    fn admissible(&self, s: &State) -> bool {
        match &self.target {
            None => true,
            Some(target) => s.interp.is_subset(target) && target.difference(&s.interp).all(|a| s.over.contains(a)),
        }
    }
}

impl Iterator for Branches<'_> {
    type Item = Branch;

    fn next(&mut self) -> Option<Branch> {
        while let Some(branch) = self.stack.pop() {
            let state = branch.last();
            let applicable = applicable_laws(self.theory, state);
            if applicable.is_empty() {
                match &self.target {
                    Some(t) if &state.interp != t => continue,
                    _ => return Some(branch),
                }
            }
            let mut children = Vec::new();
            for &law in &applicable {
                for (outcome, prob) in outcomes(self.theory, law) {
                    let next = fire(self.theory, state, law, outcome).expect("applicable law fires");
                    if self.admissible(&next) {
                        children.push(branch.extended(next, Event { law, outcome, prob }));
                    }
                }
            }
            // Reversed so that the first law / first outcome is explored first.
            self.stack.extend(children.into_iter().rev());
        }
        None
    }
}

/// Replays a story step by step, checking that each law is applicable
/// when it happens.
pub fn replay_story(theory: &Theory, story: &StoryDocument) -> Result<Branch, EngineError> {
    let mut branch = Branch::root(initial_state(theory, &story.context)?);
    for (i, step) in story.steps.iter().enumerate() {
        let state = branch.last();
        let label = || theory.law(step.law).label.clone();
        let status = law_status(theory, state, step.law);
        if status != LawStatus::Applicable {
            return Err(EngineError::IllegalStep { step: i + 1, law: label(), status });
        }
        let prob = outcome_probability(theory, step.law, step.outcome).ok_or_else(|| EngineError::InvalidOutcome {
            law: label(),
            outcome: step.outcome.display(theory).to_string(),
        })?;
        let next = fire(theory, state, step.law, step.outcome)?;
        branch = branch.extended(next, Event { law: step.law, outcome: step.outcome, prob });
    }
    Ok(branch)
}
