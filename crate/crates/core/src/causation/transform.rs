//! Theory transformations: fixing a story, preventing an atom, forcing an
//! atom.

use std::collections::BTreeSet;

use crate::causation::CausationError;
use crate::engine::{Branch, Outcome};
use crate::prob::Probability;
use crate::theory::{Atom, CpLaw, HeadAlternative, LawId, Theory};

/// `T^b`: laws that never happened in `b` are kept as they are; each law
/// that happened is replaced by the deterministic law for its realized
/// outcome; laws that happened without effect are dropped.
pub fn fix_story(theory: &Theory, branch: &Branch) -> Result<Theory, CausationError> {
    let mut seen = BTreeSet::new();
    for ev in &branch.events {
        if ev.law.0 >= theory.len() {
            return Err(CausationError::BranchTheoryMismatch(format!("law #{} does not exist", ev.law.0 + 1)));
        }
        if !seen.insert(ev.law) {
            return Err(CausationError::BranchTheoryMismatch(format!(
                "law {} happens twice",
                theory.law(ev.law).label
            )));
        }
        if let Outcome::Atom(a) = ev.outcome {
            if !theory.law(ev.law).heads(a) {
                return Err(CausationError::BranchTheoryMismatch(format!(
                    "`{}` is not an outcome of law {}",
                    theory.atom_name(a),
                    theory.law(ev.law).label
                )));
            }
        }
    }
    Ok(fix_events(theory, branch.events.iter().map(|e| (e.law, e.outcome))))
}

/// Story fixing over an explicit event list. Events must refer to laws of
/// `theory`, each at most once.
pub(crate) fn fix_events(theory: &Theory, events: impl IntoIterator<Item = (LawId, Outcome)>) -> Theory {
    let mut realized: Vec<Option<Outcome>> = vec![None; theory.len()];
    for (law, outcome) in events {
        realized[law.0] = Some(outcome);
    }
    let laws = theory
        .law_ids()
        .filter_map(|id| match realized[id.0] {
            None => Some(theory.law(id).clone()),
            Some(Outcome::Atom(a)) => Some(theory.law(id).determinized(a)),
            Some(Outcome::NoEffect) => None,
        })
        .collect();
    theory.derived(laws)
}

/// `T^¬A`: `atom` is deleted from every head, other annotations unchanged
/// (no renormalization); laws left with an empty head disappear.
pub fn prevent(theory: &Theory, atom: Atom) -> Theory {
    let laws = theory
        .laws()
        .iter()
        .filter_map(|law| if law.heads(atom) { law.without_head_atom(atom) } else { Some(law.clone()) })
        .collect();
    theory.derived(laws)
}

/// Adds the vacuous deterministic law `atom <-` under a fresh label.
pub fn force(theory: &Theory, atom: Atom) -> Result<Theory, CausationError> {
    if theory.is_exogenous(atom) {
        return Err(CausationError::ExogenousForced(theory.atom_name(atom).to_string()));
    }
    let base = format!("force_{}", theory.atom_name(atom));
    let label = std::iter::once(base.clone())
        .chain((2..).map(|i| format!("{base}_{i}")))
        .find(|l| theory.law_by_label(l).is_none())
        .expect("unbounded label supply");
    let mut laws = theory.laws().to_vec();
    laws.push(CpLaw { label, head: vec![HeadAlternative::new(atom, Probability::one())], body: Vec::new() });
    Ok(theory.derived(laws))
}
