use crate::causation::transform::{fix_events, force, prevent};
use crate::causation::{fix_story, CausationError, CauseQuery};
use crate::engine::{enumerate_branches, law_status, prob_formula, Branch, LawStatus};
use crate::formula::Formula;
use crate::prob::Probability;
use crate::theory::{Interpretation, LawId, Literal, Theory};

/// Outcome of a complete-information query, with everything needed to
/// audit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_cause: bool,
    /// The effect index `j` along the branch.
    pub effect_index: usize,
    /// `T'`: laws fired before `j` plus laws already impossible at the cut.
    pub relevant: Theory,
    /// `T''`: the fixed, then prevented (or forced) relevant theory.
    pub counterfactual: Theory,
    /// `I'`: the initial context of the counterfactual.
    pub context: Interpretation,
    /// Probability of the effect under `T''` and `I'`; zero iff `is_cause`.
    pub probability: Probability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PartialKind {
    Certain,
    PossibleOnly,
    NotPossible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialVerdict {
    pub kind: PartialKind,
    /// Branches in which the candidate is an actual cause.
    pub supporting: usize,
    pub total: usize,
}

impl PartialVerdict {
    fn from_counts(supporting: usize, total: usize) -> Self {
        let kind = match supporting {
            0 => PartialKind::NotPossible,
            s if s == total => PartialKind::Certain,
            _ => PartialKind::PossibleOnly,
        };
        PartialVerdict { kind, supporting, total }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `|B(I)|`, the number of branches ending in the observed interpretation.
    pub branch_count: usize,
    pub verdicts: Vec<(Literal, PartialVerdict)>,
}

fn literal_formula(l: Literal) -> Formula {
    if l.positive {
        Formula::Atom(l.atom)
    } else {
        Formula::not(Formula::Atom(l.atom))
    }
}

fn literal_name(theory: &Theory, l: Literal) -> String {
    l.display(theory.vocab()).to_string()
}

fn require_final(theory: &Theory, branch: &Branch, l: Literal) -> Result<(), CausationError> {
    if l.holds_in(&branch.last().interp) {
        Ok(())
    } else {
        Err(CausationError::PreconditionNotInFinalState(literal_name(theory, l)))
    }
}

/// The intervention on `cause`, applied to an already fixed theory.
fn intervene(theory: &Theory, s0: &Interpretation, cause: Literal) -> Result<(Theory, Interpretation), CausationError> {
    if cause.positive {
        Ok((prevent(theory, cause.atom), s0.without(cause.atom)))
    } else if theory.is_exogenous(cause.atom) {
        Ok((theory.clone(), s0.with(cause.atom)))
    } else {
        Ok((force(theory, cause.atom)?, s0.clone()))
    }
}

/// Does `effect` counterfactually depend on `cause` once the whole story of
/// `branch` is fixed?
pub fn counterfactual_dependency(
    theory: &Theory,
    branch: &Branch,
    cause: Literal,
    effect: Literal,
) -> Result<bool, CausationError> {
    require_final(theory, branch, cause)?;
    require_final(theory, branch, effect)?;
    let fixed = fix_story(theory, branch)?;
    let (t2, ctx) = intervene(&fixed, &branch.first().interp, cause)?;
    Ok(prob_formula(&t2, &ctx, &literal_formula(effect))?.is_zero())
}

/// First index at which the effect is settled: a positive effect has become
/// true, a negative one has left the overestimate.
pub fn effect_index(branch: &Branch, effect: Literal) -> Result<usize, CausationError> {
    branch
        .states
        .iter()
        .position(|s| if effect.positive { s.interp.contains(effect.atom) } else { !s.over.contains(effect.atom) })
        .ok_or(CausationError::EffectNeverHolds)
}

fn relevant_ids(theory: &Theory, branch: &Branch, effect: Literal) -> Result<(usize, Vec<LawId>), CausationError> {
    require_final(theory, branch, effect)?;
    let j = effect_index(branch, effect)?;
    // Positive effects are judged just before they happen, negative ones at
    // the moment they become impossible. With j = 0 there is no earlier
    // state and s0 is used.
    let cut = if effect.positive { j.saturating_sub(1) } else { j };
    let cut_state = &branch.states[cut];
    let fired_before: Vec<LawId> = branch.events[..j].iter().map(|e| e.law).collect();
    let ids = theory
        .law_ids()
        .filter(|&id| fired_before.contains(&id) || law_status(theory, cut_state, id) == LawStatus::Impossible)
        .collect();
    Ok((j, ids))
}

/// `T'`: the laws that happened before the effect together with those that
/// had already become impossible by then.
pub fn relevant_theory(theory: &Theory, branch: &Branch, effect: Literal) -> Result<Theory, CausationError> {
    let (_, ids) = relevant_ids(theory, branch, effect)?;
    Ok(theory.derived(ids.iter().map(|&id| theory.law(id).clone()).collect()))
}

/// Complete-information actual causation along one branch.
pub fn actual_cause(theory: &Theory, branch: &Branch, query: CauseQuery) -> Result<Verdict, CausationError> {
    require_final(theory, branch, query.cause())?;
    require_final(theory, branch, query.effect())?;
    fix_story(theory, branch)?;

    let (j, ids) = relevant_ids(theory, branch, query.effect())?;
    let relevant = theory.derived(ids.iter().map(|&id| theory.law(id).clone()).collect());
    let events = branch.events.iter().filter_map(|e| {
        let pos = ids.iter().position(|&id| id == e.law)?;
        Some((LawId(pos), e.outcome))
    });
    let fixed = fix_events(&relevant, events);
    let (counterfactual, context) = intervene(&fixed, &branch.first().interp, query.cause())?;
    let probability = prob_formula(&counterfactual, &context, &literal_formula(query.effect()))?;
    Ok(Verdict { is_cause: probability.is_zero(), effect_index: j, relevant, counterfactual, context, probability })
}

/// Literals eligible as causes in `final_interp`: atoms true in it, then
/// negations of atoms false in it, the effect excluded.
pub fn default_candidates(theory: &Theory, final_interp: &Interpretation, effect: Literal) -> Vec<Literal> {
    let mut atoms: Vec<_> = theory.vocab().atoms().collect();
    atoms.sort_by_key(|&a| theory.atom_name(a));
    let pos = atoms.iter().filter(|&&a| final_interp.contains(a)).map(|&a| Literal::pos(a));
    let neg = atoms.iter().filter(|&&a| !final_interp.contains(a)).map(|&a| Literal::neg(a));
    pos.chain(neg).filter(|&l| l != effect).collect()
}

/// Partial-information causation: runs [`actual_cause`] on every branch
/// whose final interpretation is `final_interp`, starting from the
/// exogenous part of `final_interp`.
pub fn classify_causes(
    theory: &Theory,
    final_interp: &Interpretation,
    effect: Literal,
    candidates: &[Literal],
) -> Result<Classification, CausationError> {
    for &l in std::iter::once(&effect).chain(candidates) {
        if !l.holds_in(final_interp) {
            return Err(CausationError::PreconditionNotInFinalState(literal_name(theory, l)));
        }
    }
    let queries = candidates.iter().map(|&c| CauseQuery::new(c, effect)).collect::<Result<Vec<_>, _>>()?;
    let context: Interpretation = final_interp.iter().filter(|&a| theory.is_exogenous(a)).collect();

    let mut supporting = vec![0usize; queries.len()];
    let mut total = 0;
    for branch in enumerate_branches(theory, &context, Some(final_interp))? {
        total += 1;
        for (count, &q) in supporting.iter_mut().zip(&queries) {
            if actual_cause(theory, &branch, q)?.is_cause {
                *count += 1;
            }
        }
    }
    let verdicts =
        candidates.iter().zip(supporting).map(|(&c, s)| (c, PartialVerdict::from_counts(s, total))).collect();
    Ok(Classification { branch_count: total, verdicts })
}
