//! Brute-force reference semantics, written independently of the engine.
//!
//! Worlds are computed by a naive recursive expansion that recomputes the
//! overestimate from scratch at every node, and story fixing / prevention
//! are done by editing law lists and re-validating.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cplogic::{validate_theory, Atom, CpLaw, Interpretation, Literal, Probability, Theory};

pub type World = BTreeSet<Atom>;

fn reachable(laws: &[CpLaw], interp: &World, fired: &[bool]) -> World {
    let mut u = interp.clone();
    loop {
        let mut grew = false;
        for (i, law) in laws.iter().enumerate() {
            if fired[i] {
                continue;
            }
            let neg_ok = law.body.iter().filter(|l| !l.positive).all(|l| !interp.contains(&l.atom));
            let pos_ok = law.body.iter().filter(|l| l.positive).all(|l| u.contains(&l.atom));
            if neg_ok && pos_ok {
                for h in &law.head {
                    grew |= u.insert(h.atom);
                }
            }
        }
        if !grew {
            return u;
        }
    }
}

fn first_applicable(laws: &[CpLaw], interp: &World, fired: &[bool]) -> Option<usize> {
    let u = reachable(laws, interp, fired);
    (0..laws.len()).find(|&i| {
        !fired[i]
            && laws[i].body.iter().all(|l| if l.positive { interp.contains(&l.atom) } else { !u.contains(&l.atom) })
    })
}

fn expand(laws: &[CpLaw], interp: World, fired: Vec<bool>, mass: Probability, out: &mut BTreeMap<World, Probability>) {
    let Some(i) = first_applicable(laws, &interp, &fired) else {
        let slot = out.entry(interp).or_insert_with(Probability::zero);
        *slot = slot.clone() + mass;
        return;
    };
    let mut fired2 = fired.clone();
    fired2[i] = true;
    let mut rest = Probability::one();
    for h in &laws[i].head {
        let mut w = interp.clone();
        w.insert(h.atom);
        rest = rest - h.prob.clone();
        expand(laws, w, fired2.clone(), mass.clone() * h.prob.clone(), out);
    }
    if !rest.is_zero() {
        expand(laws, interp, fired2, mass * rest, out);
    }
}

/// Distribution over final worlds.
pub fn worlds(theory: &Theory, ctx: &Interpretation) -> BTreeMap<World, Probability> {
    let mut out = BTreeMap::new();
    expand(theory.laws(), ctx.iter().collect(), vec![false; theory.len()], Probability::one(), &mut out);
    out
}

pub fn prob(theory: &Theory, ctx: &Interpretation, pred: impl Fn(&World) -> bool) -> Probability {
    worlds(theory, ctx).into_iter().filter(|(w, _)| pred(w)).map(|(_, p)| p).sum()
}

pub fn prob_literal(theory: &Theory, ctx: &Interpretation, l: Literal) -> Probability {
    prob(theory, ctx, |w| w.contains(&l.atom) == l.positive)
}

/// Rebuilds `theory` with a new law list.
pub fn with_laws(theory: &Theory, laws: Vec<CpLaw>) -> Theory {
    let mut cand = theory.to_candidate();
    cand.laws = laws
        .into_iter()
        .map(|l| cplogic::theory::LawCandidate { label: Some(l.label), head: l.head, body: l.body, line: None })
        .collect();
    validate_theory(cand).expect("edited theory stays valid")
}

/// Story fixing by label: `events` maps a label to its realized atom, or
/// `None` for a no-effect firing.
pub fn fix(theory: &Theory, events: &[(String, Option<Atom>)]) -> Theory {
    let laws = theory
        .laws()
        .iter()
        .filter_map(|law| match events.iter().find(|(l, _)| l == &law.label) {
            None => Some(law.clone()),
            Some((_, None)) => None,
            Some((_, Some(a))) => {
                let mut h = law.head.iter().find(|h| h.atom == *a).expect("outcome in head").clone();
                h.prob = Probability::one();
                h.symbolic = false;
                Some(CpLaw { label: law.label.clone(), head: vec![h], body: law.body.clone() })
            }
        })
        .collect();
    with_laws(theory, laws)
}

pub fn remove_head(theory: &Theory, atom: Atom) -> Theory {
    let laws = theory
        .laws()
        .iter()
        .filter_map(|law| {
            let head: Vec<_> = law.head.iter().filter(|h| h.atom != atom).cloned().collect();
            (!head.is_empty()).then(|| CpLaw { label: law.label.clone(), head, body: law.body.clone() })
        })
        .collect();
    with_laws(theory, laws)
}

pub fn add_fact(theory: &Theory, atom: Atom) -> Theory {
    let mut laws = theory.laws().to_vec();
    laws.push(CpLaw {
        label: "oracle_fact".into(),
        head: vec![cplogic::HeadAlternative::new(atom, Probability::one())],
        body: Vec::new(),
    });
    with_laws(theory, laws)
}

fn impossible(law: &CpLaw, interp: &World, u: &World) -> bool {
    law.body.iter().any(|l| if l.positive { !u.contains(&l.atom) } else { interp.contains(&l.atom) })
}

fn applicable(law: &CpLaw, interp: &World, u: &World) -> bool {
    law.body.iter().all(|l| if l.positive { interp.contains(&l.atom) } else { !u.contains(&l.atom) })
}

/// A branch as plain data: states `(I, fired, U)` and events `(law, outcome)`.
#[derive(Clone, Debug)]
pub struct OracleBranch {
    pub states: Vec<(World, Vec<bool>, World)>,
    pub events: Vec<(usize, Option<Atom>)>,
}

impl OracleBranch {
    pub fn last_world(&self) -> &World {
        &self.states.last().unwrap().0
    }
}

/// Every branch of every execution model, by exhaustive search.
pub fn branches(theory: &Theory, ctx: &Interpretation) -> Vec<OracleBranch> {
    fn go(laws: &[CpLaw], b: OracleBranch, out: &mut Vec<OracleBranch>) {
        let (interp, fired, u) = b.states.last().unwrap().clone();
        let next: Vec<usize> = (0..laws.len()).filter(|&i| !fired[i] && applicable(&laws[i], &interp, &u)).collect();
        if next.is_empty() {
            out.push(b);
            return;
        }
        for i in next {
            let mut f2 = fired.clone();
            f2[i] = true;
            let mut outs: Vec<Option<Atom>> = laws[i].head.iter().map(|h| Some(h.atom)).collect();
            let sum: Probability = laws[i].head.iter().map(|h| &h.prob).sum();
            if !sum.is_one() {
                outs.push(None);
            }
            for o in outs {
                let mut w = interp.clone();
                w.extend(o);
                let u2 = reachable(laws, &w, &f2);
                let mut b2 = b.clone();
                b2.states.push((w, f2.clone(), u2));
                b2.events.push((i, o));
                go(laws, b2, out);
            }
        }
    }
    let laws = theory.laws();
    let w: World = ctx.iter().collect();
    let fired = vec![false; laws.len()];
    let u = reachable(laws, &w, &fired);
    let mut out = Vec::new();
    go(laws, OracleBranch { states: vec![(w, fired, u)], events: Vec::new() }, &mut out);
    out
}

/// Actual causation along an oracle branch, straight from the definition.
pub fn is_actual_cause(theory: &Theory, b: &OracleBranch, cause: Literal, effect: Literal) -> bool {
    let laws = theory.laws();
    let j = b
        .states
        .iter()
        .position(|(w, _, u)| if effect.positive { w.contains(&effect.atom) } else { !u.contains(&effect.atom) })
        .expect("effect settles somewhere");
    let cut = if effect.positive { j.max(1) - 1 } else { j };
    let (ci, cf, cu) = &b.states[cut];
    let kept: Vec<CpLaw> = (0..laws.len())
        .filter(|&i| b.events[..j].iter().any(|e| e.0 == i) || (!cf[i] && impossible(&laws[i], ci, cu)))
        .map(|i| laws[i].clone())
        .collect();
    let rel = with_laws(theory, kept);
    let events: Vec<_> = b
        .events
        .iter()
        .filter(|(i, _)| rel.law_by_label(&laws[*i].label).is_some())
        .map(|(i, o)| (laws[*i].label.clone(), *o))
        .collect();
    let fixed = fix(&rel, &events);
    let s0: Interpretation = b.states[0].0.iter().copied().collect();
    let p = if cause.positive {
        prob_literal(&remove_head(&fixed, cause.atom), &s0.without(cause.atom), effect)
    } else if theory.is_exogenous(cause.atom) {
        prob_literal(&fixed, &s0.with(cause.atom), effect)
    } else {
        prob_literal(&add_fact(&fixed, cause.atom), &s0, effect)
    };
    p.is_zero()
}

/// `(supporting, total)` over the branches ending in `world`.
pub fn cause_counts(theory: &Theory, world: &Interpretation, cause: Literal, effect: Literal) -> (usize, usize) {
    let ctx: Interpretation = world.iter().filter(|&a| theory.is_exogenous(a)).collect();
    let target: World = world.iter().collect();
    let bs: Vec<_> = branches(theory, &ctx).into_iter().filter(|b| b.last_world() == &target).collect();
    let yes = bs.iter().filter(|b| is_actual_cause(theory, b, cause, effect)).count();
    (yes, bs.len())
}
