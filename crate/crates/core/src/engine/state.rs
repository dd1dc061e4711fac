use std::collections::BTreeSet;
use std::fmt;

use crate::engine::EngineError;
use crate::prob::Probability;
use crate::theory::{Atom, Interpretation, LawId, Theory};

/// The realized outcome of a fired law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Atom(Atom),
    /// The event happened without visible effect (mass `1 - sum(head)`).
    NoEffect,
}

impl Outcome {
    pub fn display<'a>(&'a self, theory: &'a Theory) -> impl fmt::Display + 'a {
        crate::theory::DisplayWith(move |f: &mut fmt::Formatter<'_>| match self {
            Outcome::Atom(a) => f.write_str(theory.atom_name(*a)),
            Outcome::NoEffect => f.write_str("none"),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawStatus {
    Fired,
    /// Unfired and its body holds: positive atoms true, negated atoms
    /// can no longer be caused.
    Applicable,
    /// Unfired, not yet applicable, but may still become so.
    Pending,
    /// Unfired and can never become applicable again.
    Impossible,
}

impl fmt::Display for LawStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawStatus::Fired => "fired",
            LawStatus::Applicable => "applicable",
            LawStatus::Pending => "pending",
            LawStatus::Impossible => "impossible",
        })
    }
}

/// A node of an execution model: the current interpretation, the laws
/// that already happened, and the overestimate of atoms still causable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub interp: Interpretation,
    pub fired: BTreeSet<LawId>,
    pub over: Interpretation,
}

impl State {
    pub fn has_fired(&self, law: LawId) -> bool {
        self.fired.contains(&law)
    }
}

/// Root state: the context atoms true, every endogenous atom false.
pub fn initial_state(theory: &Theory, context: &Interpretation) -> Result<State, EngineError> {
    if let Some(bad) = context.iter().find(|&a| !theory.is_exogenous(a)) {
        return Err(EngineError::NonExogenousInContext(theory.atom_name(bad).to_string()));
    }
    let fired = BTreeSet::new();
    let over = overestimate(theory, context, &fired);
    Ok(State { interp: context.clone(), fired, over })
}

/// Least fixpoint of
/// `X = interp ∪ { head atoms of unfired r : pos(r) ⊆ X, neg(r) ∩ interp = ∅ }`.
///
/// A negated body atom only blocks a law once it is actually true, since
/// true atoms stay true.
pub fn overestimate(theory: &Theory, interp: &Interpretation, fired: &BTreeSet<LawId>) -> Interpretation {
    let mut over = interp.clone();
    let mut live: Vec<LawId> = theory
        .law_ids()
        .filter(|id| !fired.contains(id))
        .filter(|&id| theory.law(id).negative_body().all(|a| !interp.contains(a)))
        .collect();
    loop {
        let before = live.len();
        live.retain(|&id| {
            let law = theory.law(id);
            if law.positive_body().all(|a| over.contains(a)) {
                over.extend(law.head_atoms());
                false
            } else {
                true
            }
        });
        if live.len() == before {
            return over;
        }
    }
}

pub fn law_status(theory: &Theory, state: &State, law: LawId) -> LawStatus {
    if state.fired.contains(&law) {
        return LawStatus::Fired;
    }
    let r = theory.law(law);
    if r.positive_body().any(|a| !state.over.contains(a)) || r.negative_body().any(|a| state.interp.contains(a)) {
        return LawStatus::Impossible;
    }
    if r.positive_body().all(|a| state.interp.contains(a)) && r.negative_body().all(|a| !state.over.contains(a)) {
        LawStatus::Applicable
    } else {
        LawStatus::Pending
    }
}

/// Applicable laws in theory order.
pub fn applicable_laws(theory: &Theory, state: &State) -> Vec<LawId> {
    theory.law_ids().filter(|&id| law_status(theory, state, id) == LawStatus::Applicable).collect()
}

/// Every possible outcome of a law together with its probability, in head
/// order, followed by the no-effect outcome when the head sums below 1.
pub fn outcomes(theory: &Theory, law: LawId) -> Vec<(Outcome, Probability)> {
    let r = theory.law(law);
    let mut out: Vec<_> = r.head.iter().map(|h| (Outcome::Atom(h.atom), h.prob.clone())).collect();
    let residual = r.residual();
    if residual.is_positive() {
        out.push((Outcome::NoEffect, residual));
    }
    out
}

pub fn outcome_probability(theory: &Theory, law: LawId, outcome: Outcome) -> Option<Probability> {
    let r = theory.law(law);
    match outcome {
        Outcome::Atom(a) => r.prob_of(a).cloned(),
        Outcome::NoEffect => Some(r.residual()).filter(Probability::is_positive),
    }
}

/// Fires an applicable law. An outcome atom that is already true leaves the
/// interpretation unchanged but the law is still consumed.
pub fn fire(theory: &Theory, state: &State, law: LawId, outcome: Outcome) -> Result<State, EngineError> {
    let status = law_status(theory, state, law);
    if status != LawStatus::Applicable {
        return Err(EngineError::NotApplicable { law: theory.law(law).label.clone(), status });
    }
    if outcome_probability(theory, law, outcome).is_none() {
        return Err(EngineError::InvalidOutcome {
            law: theory.law(law).label.clone(),
            outcome: outcome.display(theory).to_string(),
        });
    }
    let mut interp = state.interp.clone();
    if let Outcome::Atom(a) = outcome {
        interp.insert(a);
    }
    let mut fired = state.fired.clone();
    fired.insert(law);
    let over = overestimate(theory, &interp, &fired);
    Ok(State { interp, fired, over })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_theory;
    use crate::theory::validate_theory;

    fn theory(src: &str) -> Theory {
        validate_theory(parse_theory(src).unwrap()).unwrap()
    }

    fn interp(t: &Theory, names: &[&str]) -> Interpretation {
        names.iter().map(|n| t.atom(n).unwrap()).collect()
    }

    const SUZY_BILLY: &str = "exogenous throws_suzy, throws_billy.\n\
                              shatters:0.9 <- throws_suzy.\n\
                              shatters:0.8 <- throws_billy.\n";

    const BOGUS: &str = "@anti: antidote:*.\n\
                         @coh: change_of_heart:*.\n\
                         @pois: poison <- ~change_of_heart.\n\
                         @dth: death <- poison, ~antidote.\n";

    #[test]
    fn initial_state_uses_context() {
        let t = theory(SUZY_BILLY);
        let ctx = interp(&t, &["throws_suzy", "throws_billy"]);
        let s = initial_state(&t, &ctx).unwrap();
        assert_eq!(s.interp, ctx);
        assert!(s.fired.is_empty());
        for id in t.law_ids() {
            assert_eq!(law_status(&t, &s, id), LawStatus::Applicable);
        }
    }

    #[test]
    fn empty_theory_initial_state() {
        let t = Theory::empty();
        let s = initial_state(&t, &Interpretation::new()).unwrap();
        assert!(s.interp.is_empty());
        assert!(s.over.is_empty());
    }

    #[test]
    fn endogenous_context_is_rejected() {
        let t = theory(SUZY_BILLY);
        let err = initial_state(&t, &interp(&t, &["shatters"])).unwrap_err();
        assert_eq!(err, EngineError::NonExogenousInContext("shatters".into()));
    }

    #[test]
    fn bogus_prevention_after_change_of_heart() {
        let t = theory(BOGUS);
        let s0 = initial_state(&t, &Interpretation::new()).unwrap();
        assert_eq!(s0.over, interp(&t, &["antidote", "change_of_heart", "poison", "death"]));
        let coh = t.law_by_label("coh").unwrap();
        let s1 = fire(&t, &s0, coh, Outcome::Atom(t.atom("change_of_heart").unwrap())).unwrap();
        assert_eq!(s1.over, interp(&t, &["change_of_heart", "antidote"]));
        assert_eq!(law_status(&t, &s1, t.law_by_label("pois").unwrap()), LawStatus::Impossible);
        assert_eq!(law_status(&t, &s1, t.law_by_label("dth").unwrap()), LawStatus::Impossible);
        assert_eq!(law_status(&t, &s1, t.law_by_label("anti").unwrap()), LawStatus::Applicable);
        assert_eq!(law_status(&t, &s1, coh), LawStatus::Fired);
    }

    #[test]
    fn positive_reachability() {
        // Hand-computed closure: a is given; b, c follow from a; d needs e,
        // which nothing causes.
        let t = theory("exogenous a, e.\nb <- a.\nc:0.5 <- b.\nd <- c, e.\nf <- g.\ng <- f.\n");
        let s = initial_state(&t, &interp(&t, &["a"])).unwrap();
        assert_eq!(s.over, interp(&t, &["a", "b", "c"]));
    }

    #[test]
    fn no_laws_means_over_is_interp() {
        let t = theory("exogenous a, b.\n");
        let i = interp(&t, &["a"]);
        assert_eq!(overestimate(&t, &i, &BTreeSet::new()), i);
    }

    #[test]
    fn firing() {
        let t = theory(SUZY_BILLY);
        let s0 = initial_state(&t, &interp(&t, &["throws_suzy", "throws_billy"])).unwrap();
        let shatters = t.atom("shatters").unwrap();
        let suzy = LawId(0);
        let s1 = fire(&t, &s0, suzy, Outcome::Atom(shatters)).unwrap();
        assert!(s1.interp.contains(shatters));
        assert!(s1.has_fired(suzy));

        let miss = fire(&t, &s0, suzy, Outcome::NoEffect).unwrap();
        assert_eq!(miss.interp, s0.interp);
        assert_eq!(outcome_probability(&t, suzy, Outcome::NoEffect), Some(Probability::new(1, 10)));

        let err = fire(&t, &s1, suzy, Outcome::Atom(shatters)).unwrap_err();
        assert!(matches!(err, EngineError::NotApplicable { status: LawStatus::Fired, .. }));

        // Already-true outcome still consumes the law.
        let s2 = fire(&t, &s1, LawId(1), Outcome::Atom(shatters)).unwrap();
        assert_eq!(s2.interp, s1.interp);
        assert!(s2.has_fired(LawId(1)));
    }

    #[test]
    fn invalid_outcomes() {
        let t = theory("exogenous x.\na <- x.\nb:0.5 ; c:0.5 <- x.\n");
        let s0 = initial_state(&t, &interp(&t, &["x"])).unwrap();
        let err = fire(&t, &s0, LawId(0), Outcome::NoEffect).unwrap_err();
        assert!(matches!(err, EngineError::InvalidOutcome { .. }));
        let err = fire(&t, &s0, LawId(1), Outcome::Atom(t.atom("a").unwrap())).unwrap_err();
        assert!(matches!(err, EngineError::InvalidOutcome { .. }));
    }

    #[test]
    fn outcome_lists_sum_to_one() {
        let t = theory("a:1/3 ; b:1/4.\nc.\n");
        let o = outcomes(&t, LawId(0));
        assert_eq!(o.len(), 3);
        assert_eq!(o.iter().map(|(_, p)| p.clone()).sum::<Probability>(), Probability::one());
        assert_eq!(outcomes(&t, LawId(1)).len(), 1);
    }
}
