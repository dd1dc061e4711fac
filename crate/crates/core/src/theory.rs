//! Atoms, literals, CP-laws and theories, plus structural validation.
//!
//! A [`Theory`] is only ever produced by [`validate_theory`] (or by the
//! causation transformations, which preserve validity). Everything is
//! immutable once built.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::depgraph::{negation_loop_check, LoopCheck};
use crate::prob::Probability;

/// An interned ground atom. Atoms are only meaningful relative to the
/// [`Vocabulary`] that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Atom {
        Atom(i as u32)
    }
}

/// Interning table for atom names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, Atom>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&a) = self.index.get(name) {
            return a;
        }
        let a = Atom(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), a);
        a
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.index.get(name).copied()
    }

    pub fn name(&self, atom: Atom) -> &str {
        &self.names[atom.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.names.len() as u32).map(Atom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }

    /// Two-valued truth in a final interpretation.
    pub fn holds_in(&self, interp: &Interpretation) -> bool {
        interp.contains(self.atom) == self.positive
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> impl fmt::Display + 'a {
        DisplayWith(move |f: &mut fmt::Formatter<'_>| {
            if !self.positive {
                f.write_str("~")?;
            }
            f.write_str(vocab.name(self.atom))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadAlternative {
    pub atom: Atom,
    pub prob: Probability,
    /// Written as `*` in the source: the value is unknown and was replaced by 1/2.
    pub symbolic: bool,
}

impl HeadAlternative {
    pub fn new(atom: Atom, prob: Probability) -> Self {
        HeadAlternative { atom, prob, symbolic: false }
    }
}

/// A ground CP-law `(A1:a1) ; ... ; (An:an) <- l1, ..., lm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpLaw {
    pub label: String,
    pub head: Vec<HeadAlternative>,
    pub body: Vec<Literal>,
}

impl CpLaw {
    pub fn head_sum(&self) -> Probability {
        self.head.iter().map(|h| &h.prob).sum()
    }

    /// Probability of the implicit no-effect outcome, `1 - sum(head)`.
    pub fn residual(&self) -> Probability {
        Probability::one() - self.head_sum()
    }

    pub fn has_residual(&self) -> bool {
        self.residual().is_positive()
    }

    pub fn head_atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.head.iter().map(|h| h.atom)
    }

    pub fn heads(&self, atom: Atom) -> bool {
        self.head.iter().any(|h| h.atom == atom)
    }

    pub fn prob_of(&self, atom: Atom) -> Option<&Probability> {
        self.head.iter().find(|h| h.atom == atom).map(|h| &h.prob)
    }

    pub fn positive_body(&self) -> impl Iterator<Item = Atom> + '_ {
        self.body.iter().filter(|l| l.positive).map(|l| l.atom)
    }

    pub fn negative_body(&self) -> impl Iterator<Item = Atom> + '_ {
        self.body.iter().filter(|l| !l.positive).map(|l| l.atom)
    }

    pub fn is_deterministic(&self) -> bool {
        self.head.len() == 1 && self.head[0].prob.is_one()
    }

    pub fn is_symbolic(&self) -> bool {
        self.head.iter().any(|h| h.symbolic)
    }

    /// `A <- body`: the law with its outcome frozen to `atom`.
    pub fn determinized(&self, atom: Atom) -> CpLaw {
        CpLaw {
            label: self.label.clone(),
            head: vec![HeadAlternative::new(atom, Probability::one())],
            body: self.body.clone(),
        }
    }

    /// The law with `atom` deleted from its head, remaining annotations
    /// kept as they are. `None` if the head becomes empty.
    pub fn without_head_atom(&self, atom: Atom) -> Option<CpLaw> {
        let head: Vec<_> = self.head.iter().filter(|h| h.atom != atom).cloned().collect();
        if head.is_empty() {
            None
        } else {
            Some(CpLaw { label: self.label.clone(), head, body: self.body.clone() })
        }
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> impl fmt::Display + 'a {
        DisplayWith(move |f: &mut fmt::Formatter<'_>| {
            for (i, h) in self.head.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ; ")?;
                }
                f.write_str(vocab.name(h.atom))?;
                if h.symbolic {
                    f.write_str(":*")?;
                } else if !h.prob.is_one() {
                    write!(f, ":{}", h.prob)?;
                }
            }
            if !self.body.is_empty() {
                f.write_str(" <- ")?;
                for (i, l) in self.body.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", l.display(vocab))?;
                }
            }
            Ok(())
        })
    }
}

/// The set of true atoms; every other atom is false.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.contains(&atom)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.0.insert(atom)
    }

    pub fn remove(&mut self, atom: Atom) -> bool {
        self.0.remove(&atom)
    }

    pub fn with(&self, atom: Atom) -> Interpretation {
        let mut i = self.clone();
        i.insert(atom);
        i
    }

    pub fn without(&self, atom: Atom) -> Interpretation {
        let mut i = self.clone();
        i.remove(atom);
        i
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference<'a>(&'a self, other: &'a Interpretation) -> impl Iterator<Item = Atom> + 'a {
        self.0.difference(&other.0).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `{a, b, c}` with atoms sorted by name.
    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> impl fmt::Display + 'a {
        DisplayWith(move |f: &mut fmt::Formatter<'_>| {
            let mut names: Vec<&str> = self.0.iter().map(|&a| vocab.name(a)).collect();
            names.sort_unstable();
            write!(f, "{{{}}}", names.join(", "))
        })
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl Extend<Atom> for Interpretation {
    fn extend<T: IntoIterator<Item = Atom>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

/// Position of a law inside its theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LawId(pub usize);

/// A validated CP-theory: an ordered list of labeled laws and the set of
/// exogenous atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    vocab: Arc<Vocabulary>,
    laws: Vec<CpLaw>,
    exogenous: BTreeSet<Atom>,
}

impl Theory {
    pub fn empty() -> Self {
        Theory { vocab: Arc::new(Vocabulary::new()), laws: Vec::new(), exogenous: BTreeSet::new() }
    }

    /// Rebuilds a theory over the same vocabulary. Callers are responsible
    /// for keeping the result valid; this is used by theory transformations
    /// that only remove laws, shrink heads, or add vacuous laws.
    pub(crate) fn derived(&self, laws: Vec<CpLaw>) -> Theory {
        Theory { vocab: Arc::clone(&self.vocab), laws, exogenous: self.exogenous.clone() }
    }

    /// Skips validation entirely. Test-only.
    #[cfg(test)]
    pub(crate) fn unchecked_from_candidate(c: TheoryCandidate) -> Theory {
        let laws = c
            .laws
            .into_iter()
            .enumerate()
            .map(|(i, l)| CpLaw { label: l.label.unwrap_or_else(|| format!("r{}", i + 1)), head: l.head, body: l.body })
            .collect();
        Theory { vocab: Arc::new(c.vocab), laws, exogenous: c.exogenous.into_iter().collect() }
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn laws(&self) -> &[CpLaw] {
        &self.laws
    }

    pub fn law(&self, id: LawId) -> &CpLaw {
        &self.laws[id.0]
    }

    pub fn law_ids(&self) -> impl Iterator<Item = LawId> {
        (0..self.laws.len()).map(LawId)
    }

    pub fn len(&self) -> usize {
        self.laws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.laws.is_empty()
    }

    pub fn exogenous(&self) -> &BTreeSet<Atom> {
        &self.exogenous
    }

    pub fn is_exogenous(&self, atom: Atom) -> bool {
        self.exogenous.contains(&atom)
    }

    pub fn law_by_label(&self, label: &str) -> Option<LawId> {
        let label = label.strip_prefix('@').unwrap_or(label);
        self.laws.iter().position(|l| l.label == label).map(LawId)
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.vocab.lookup(name)
    }

    pub fn atom_name(&self, atom: Atom) -> &str {
        self.vocab.name(atom)
    }

    /// True when some head uses the `*` annotation.
    pub fn has_symbolic(&self) -> bool {
        self.laws.iter().any(CpLaw::is_symbolic)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.laws.iter().map(|l| l.label.as_str())
    }

    /// Turns the theory back into an unvalidated candidate (labels kept).
    pub fn to_candidate(&self) -> TheoryCandidate {
        TheoryCandidate {
            vocab: (*self.vocab).clone(),
            laws: self
                .laws
                .iter()
                .map(|l| LawCandidate {
                    label: Some(l.label.clone()),
                    head: l.head.clone(),
                    body: l.body.clone(),
                    line: None,
                })
                .collect(),
            exogenous: self.exogenous.iter().copied().collect(),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, law) in self.laws.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", law.display(&self.vocab))?;
        }
        f.write_str("}")
    }
}

/// A law as it comes out of the parser: the label may be missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCandidate {
    pub label: Option<String>,
    pub head: Vec<HeadAlternative>,
    pub body: Vec<Literal>,
    /// 1-based source line, for diagnostics.
    pub line: Option<usize>,
}

/// A parsed but not yet validated theory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheoryCandidate {
    pub vocab: Vocabulary,
    pub laws: Vec<LawCandidate>,
    pub exogenous: Vec<Atom>,
}

/// Law reference used in diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawRef {
    pub label: String,
    pub line: Option<usize>,
}

impl fmt::Display for LawRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "law {} (line {line})", self.label),
            None => write!(f, "law {}", self.label),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("{law}: head atom `{atom}` has probability zero")]
    ZeroProbability { law: LawRef, atom: String },
    #[error("{law}: head atom `{atom}` has probability {prob}, above 1")]
    ProbabilityAboveOne { law: LawRef, atom: String, prob: Probability },
    #[error("{law}: head probabilities sum to {sum}, above 1")]
    HeadSumExceedsOne { law: LawRef, sum: Probability },
    #[error("{law}: atom `{atom}` appears twice in the head")]
    DuplicateHeadAtom { law: LawRef, atom: String },
    #[error("{law}: exogenous atom `{atom}` appears in a head")]
    ExogenousInHead { law: LawRef, atom: String },
    #[error("{law}: body contains both `{atom}` and `~{atom}`")]
    ContradictoryBody { law: LawRef, atom: String },
    #[error("{law}: empty head")]
    EmptyHead { law: LawRef },
    #[error("duplicate label `{label}`")]
    DuplicateLabel { label: String },
    #[error("loop through double negation: {}", cycle.join(" -> "))]
    DoubleNegationLoop { cycle: Vec<String> },
}

/// Checks every structural invariant of a theory and assigns `r<i>` labels
/// (1-based file position) to unlabeled laws. All problems are reported,
/// not just the first.
pub fn validate_theory(candidate: TheoryCandidate) -> Result<Theory, Vec<ValidationError>> {
    let TheoryCandidate { vocab, laws: raw, exogenous } = candidate;
    let exogenous: BTreeSet<Atom> = exogenous.into_iter().collect();
    let mut errors = Vec::new();
    let mut laws = Vec::with_capacity(raw.len());
    let mut seen_labels = HashSet::new();

    for (i, cand) in raw.into_iter().enumerate() {
        let label = cand.label.unwrap_or_else(|| format!("r{}", i + 1));
        let law_ref = LawRef { label: label.clone(), line: cand.line };
        if !seen_labels.insert(label.clone()) {
            errors.push(ValidationError::DuplicateLabel { label: label.clone() });
        }
        if cand.head.is_empty() {
            errors.push(ValidationError::EmptyHead { law: law_ref.clone() });
        }
        let mut head_atoms = HashSet::new();
        for h in &cand.head {
            let name = vocab.name(h.atom).to_string();
            if !h.prob.is_positive() {
                errors.push(ValidationError::ZeroProbability { law: law_ref.clone(), atom: name.clone() });
            } else if h.prob > Probability::one() {
                errors.push(ValidationError::ProbabilityAboveOne {
                    law: law_ref.clone(),
                    atom: name.clone(),
                    prob: h.prob.clone(),
                });
            }
            if !head_atoms.insert(h.atom) {
                errors.push(ValidationError::DuplicateHeadAtom { law: law_ref.clone(), atom: name.clone() });
            }
            if exogenous.contains(&h.atom) {
                errors.push(ValidationError::ExogenousInHead { law: law_ref.clone(), atom: name });
            }
        }
        let sum: Probability = cand.head.iter().map(|h| &h.prob).sum();
        if sum > Probability::one() {
            errors.push(ValidationError::HeadSumExceedsOne { law: law_ref.clone(), sum });
        }
        let mut polarity: HashMap<Atom, bool> = HashMap::new();
        let mut reported = HashSet::new();
        for lit in &cand.body {
            if let Some(&p) = polarity.get(&lit.atom) {
                if p != lit.positive && reported.insert(lit.atom) {
                    errors.push(ValidationError::ContradictoryBody {
                        law: law_ref.clone(),
                        atom: vocab.name(lit.atom).to_string(),
                    });
                }
            } else {
                polarity.insert(lit.atom, lit.positive);
            }
        }
        laws.push(CpLaw { label, head: cand.head, body: cand.body });
    }

    let theory = Theory { vocab: Arc::new(vocab), laws, exogenous };
    if let LoopCheck::Cycle(cycle) = negation_loop_check(&theory) {
        errors.push(ValidationError::DoubleNegationLoop {
            cycle: cycle.iter().map(|&a| theory.atom_name(a).to_string()).collect(),
        });
    }

    if errors.is_empty() {
        Ok(theory)
    } else {
        Err(errors)
    }
}

/// Adapter turning a closure into a `Display` value.
pub(crate) struct DisplayWith<F>(pub F);

impl<F> fmt::Display for DisplayWith<F>
where
    F: Fn(&mut fmt::Formatter<'_>) -> fmt::Result,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (self.0)(f)
    }
}
