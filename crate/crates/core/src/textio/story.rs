use thiserror::Error;

use crate::engine::Outcome;
use crate::textio::lexer::{Cursor, Tok};
use crate::textio::ParseError;
use crate::theory::{Interpretation, LawId, Theory};

/// One line of a story: which law happened and what it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoryStep {
    pub law: LawId,
    pub outcome: Outcome,
    pub line: usize,
}

/// A story resolved against a theory: the initial context and the ordered
/// events. Applicability is only checked on replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoryDocument {
    pub context: Interpretation,
    pub steps: Vec<StoryStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StoryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: unknown law label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: unknown atom `{atom}`")]
    UnknownAtom { line: usize, atom: String },
    #[error("line {line}: `{atom}` is not in the head of law {law}")]
    OutcomeNotInHead { line: usize, law: String, atom: String },
    #[error("line {line}: law {law} always has a visible effect, `none` is impossible")]
    NoEffectNotAllowed { line: usize, law: String },
}

pub fn parse_story(text: &str, theory: &Theory) -> Result<StoryDocument, StoryError> {
    let mut cur = Cursor::new(text)?;
    let mut context = Interpretation::new();

    if matches!(cur.peek(), Some(Tok::Ident(k)) if k == "context") {
        cur.bump();
        if !cur.eat(&Tok::Dot) {
            loop {
                let line = cur.here().0;
                let name = cur.ident("an atom")?;
                let atom = theory.atom(&name).ok_or(StoryError::UnknownAtom { line, atom: name })?;
                context.insert(atom);
                if !cur.eat(&Tok::Comma) {
                    break;
                }
            }
            cur.expect(&Tok::Dot, "`,` or `.`")?;
        }
    }

    let mut steps = Vec::new();
    while !cur.at_end() {
        let line = cur.here().0;
        let label = match cur.peek() {
            Some(Tok::Ident(l) | Tok::Label(l)) => {
                let l = l.clone();
                cur.bump();
                l
            }
            _ => return Err(cur.unexpected("a law label").into()),
        };
        cur.expect(&Tok::RArrow, "`->`")?;
        let outcome_name = cur.ident("an atom or `none`")?;
        cur.expect(&Tok::Dot, "`.`")?;

        let law = theory.law_by_label(&label).ok_or(StoryError::UnknownLabel { line, label: label.clone() })?;
        let r = theory.law(law);
        let outcome = if outcome_name == "none" {
            if !r.has_residual() {
                return Err(StoryError::NoEffectNotAllowed { line, law: label });
            }
            Outcome::NoEffect
        } else {
            match theory.atom(&outcome_name).filter(|&a| r.heads(a)) {
                Some(a) => Outcome::Atom(a),
                None => return Err(StoryError::OutcomeNotInHead { line, law: label, atom: outcome_name }),
            }
        };
        steps.push(StoryStep { law, outcome, line });
    }
    Ok(StoryDocument { context, steps })
}

/// Inverse of [`parse_story`], with labels and atom names from `theory`.
pub fn serialize_story(story: &StoryDocument, theory: &Theory) -> String {
    let mut out = String::from("context");
    let mut names: Vec<&str> = story.context.iter().map(|a| theory.atom_name(a)).collect();
    names.sort_unstable();
    if !names.is_empty() {
        out.push(' ');
        out.push_str(&names.join(", "));
    }
    out.push_str(".\n");
    for s in &story.steps {
        out.push_str(&format!("{} -> {}.\n", theory.law(s.law).label, s.outcome.display(theory)));
    }
    out
}
