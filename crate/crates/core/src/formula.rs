//! Propositional query formulas.

use std::fmt;

use thiserror::Error;

use crate::theory::{Atom, Interpretation, Vocabulary};

/// A propositional formula. Parsed formulas carry atom names
/// (`Formula<String>`); [`Formula::resolve`] turns them into
/// `Formula<Atom>` against a theory's vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula<A = Atom> {
    Const(bool),
    Atom(A),
    Not(Box<Formula<A>>),
    And(Box<Formula<A>>, Box<Formula<A>>),
    Or(Box<Formula<A>>, Box<Formula<A>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown atom `{0}`")]
pub struct UnknownAtom(pub String);

impl<A> Formula<A> {
    pub fn atom(a: A) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula<A>) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula<A>, r: Formula<A>) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula<A>, r: Formula<A>) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn try_map<B, E>(&self, f: &mut impl FnMut(&A) -> Result<B, E>) -> Result<Formula<B>, E> {
        Ok(match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Atom(a) => Formula::Atom(f(a)?),
            Formula::Not(x) => Formula::Not(Box::new(x.try_map(f)?)),
            Formula::And(l, r) => Formula::And(Box::new(l.try_map(f)?), Box::new(r.try_map(f)?)),
            Formula::Or(l, r) => Formula::Or(Box::new(l.try_map(f)?), Box::new(r.try_map(f)?)),
        })
    }
}

impl Formula<String> {
    pub fn resolve(&self, vocab: &Vocabulary) -> Result<Formula<Atom>, UnknownAtom> {
        self.try_map(&mut |name: &String| vocab.lookup(name).ok_or_else(|| UnknownAtom(name.clone())))
    }
}

impl Formula<Atom> {
    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> impl fmt::Display + 'a {
        crate::theory::DisplayWith(move |f: &mut fmt::Formatter<'_>| {
            let named = self
                .try_map::<_, std::convert::Infallible>(&mut |a| Ok(vocab.name(*a).to_string()))
                .unwrap_or_else(|e| match e {});
            write!(f, "{named}")
        })
    }
}

/// Two-valued evaluation; atoms outside `interp` are false.
pub fn eval_formula(f: &Formula<Atom>, interp: &Interpretation) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Atom(a) => interp.contains(*a),
        Formula::Not(x) => !eval_formula(x, interp),
        Formula::And(l, r) => eval_formula(l, interp) && eval_formula(r, interp),
        Formula::Or(l, r) => eval_formula(l, interp) || eval_formula(r, interp),
    }
}

impl<A: fmt::Display> fmt::Display for Formula<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Fully parenthesized below the top level; unambiguous and reparsable.
        match self {
            Formula::Const(true) => f.write_str("true"),
            Formula::Const(false) => f.write_str("false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(x) => match **x {
                Formula::Atom(_) | Formula::Const(_) | Formula::Not(_) => write!(f, "!{x}"),
                _ => write!(f, "!({x})"),
            },
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
        }
    }
}
