use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::prob::Probability;
use crate::textio::lexer::{Cursor, Tok};
use crate::textio::{check_atom_name, ParseError, ParseErrorKind};
use crate::theory::{HeadAlternative, LawCandidate, Literal, Theory, TheoryCandidate, Vocabulary};

struct RawAlt {
    atom: String,
    prob: Probability,
    symbolic: bool,
}

struct RawLaw {
    label: Option<String>,
    head: Vec<RawAlt>,
    body: Vec<(String, bool)>,
    line: usize,
}

/// Parses a theory file into an unvalidated candidate. Decimal annotations
/// are read as exact rationals; `*` becomes 1/2 with the symbolic flag set;
/// a missing annotation means probability 1.
///
/// Atoms are interned in name order, so two texts over the same atoms
/// yield identical vocabularies.
pub fn parse_theory(text: &str) -> Result<TheoryCandidate, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut laws = Vec::new();
    let mut exogenous = Vec::new();

    while !cur.at_end() {
        match (cur.peek(), cur.peek2()) {
            (Some(Tok::Ident(kw)), Some(Tok::Ident(_) | Tok::Dot)) if kw == "exogenous" => {
                cur.bump();
                if !cur.eat(&Tok::Dot) {
                    loop {
                        exogenous.push(atom_name(&mut cur)?);
                        if !cur.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    cur.expect(&Tok::Dot, "`,` or `.`")?;
                }
            }
            (Some(Tok::Ident(kw)), Some(Tok::Ident(_))) => {
                return Err(cur.error(ParseErrorKind::UnknownDirective(kw.clone())));
            }
            _ => laws.push(law(&mut cur)?),
        }
    }

    let names: BTreeSet<&str> = exogenous
        .iter()
        .map(String::as_str)
        .chain(laws.iter().flat_map(|l: &RawLaw| {
            l.head.iter().map(|h| h.atom.as_str()).chain(l.body.iter().map(|(a, _)| a.as_str()))
        }))
        .collect();
    let mut vocab = Vocabulary::new();
    for n in names {
        vocab.intern(n);
    }
    let atom = |n: &str| vocab.lookup(n).expect("interned above");

    let laws = laws
        .iter()
        .map(|l| LawCandidate {
            label: l.label.clone(),
            head: l
                .head
                .iter()
                .map(|h| HeadAlternative { atom: atom(&h.atom), prob: h.prob.clone(), symbolic: h.symbolic })
                .collect(),
            body: l.body.iter().map(|(a, pos)| Literal { atom: atom(a), positive: *pos }).collect(),
            line: Some(l.line),
        })
        .collect();
    let exogenous = exogenous.iter().map(|n| atom(n)).collect();
    Ok(TheoryCandidate { vocab, laws, exogenous })
}

fn atom_name(cur: &mut Cursor) -> Result<String, ParseError> {
    let at = cur.here();
    let name = cur.ident("an atom")?;
    check_atom_name(&name).map_err(|kind| ParseError { line: at.0, col: at.1, kind })?;
    Ok(name)
}

fn law(cur: &mut Cursor) -> Result<RawLaw, ParseError> {
    let line = cur.here().0;
    let label = match cur.peek() {
        Some(Tok::Label(l)) => {
            let l = l.clone();
            cur.bump();
            cur.expect(&Tok::Colon, "`:` after the label")?;
            Some(l)
        }
        _ => None,
    };
    let mut head = vec![alternative(cur)?];
    while cur.eat(&Tok::Semi) {
        head.push(alternative(cur)?);
    }
    let mut body = Vec::new();
    if cur.eat(&Tok::LArrow) && cur.peek() != Some(&Tok::Dot) {
        loop {
            let positive = !cur.eat(&Tok::Tilde);
            body.push((atom_name(cur)?, positive));
            if !cur.eat(&Tok::Comma) {
                break;
            }
        }
    }
    cur.expect(&Tok::Dot, "`;`, `<-`, `,` or `.`")?;
    Ok(RawLaw { label, head, body, line })
}

fn alternative(cur: &mut Cursor) -> Result<RawAlt, ParseError> {
    let atom = atom_name(cur)?;
    if !cur.eat(&Tok::Colon) {
        return Ok(RawAlt { atom, prob: Probability::one(), symbolic: false });
    }
    if cur.eat(&Tok::Star) {
        return Ok(RawAlt { atom, prob: Probability::half(), symbolic: true });
    }
    let at = cur.here();
    let err = |kind| ParseError { line: at.0, col: at.1, kind };
    let mut text = match cur.bump() {
        Some(Tok::Number(n)) => n,
        _ => {
            return Err(err(ParseErrorKind::Unexpected {
                found: "something else".into(),
                expected: "a probability".into(),
            }))
        }
    };
    if cur.eat(&Tok::Slash) {
        match cur.bump() {
            Some(Tok::Number(d)) => {
                text.push('/');
                text.push_str(&d);
            }
            _ => return Err(err(ParseErrorKind::BadProbability(format!("{text}/")))),
        }
    }
    let prob: Probability = text.parse().map_err(|_| err(ParseErrorKind::BadProbability(text.clone())))?;
    if prob > Probability::one() {
        return Err(err(ParseErrorKind::ProbabilityOutOfRange(text)));
    }
    Ok(RawAlt { atom, prob, symbolic: false })
}

/// Canonical text form: an `exogenous` line with atoms sorted by name, then
/// every law in order with an explicit label.
pub fn serialize_theory(theory: &Theory) -> String {
    let mut out = String::new();
    if !theory.exogenous().is_empty() {
        let mut names: Vec<&str> = theory.exogenous().iter().map(|&a| theory.atom_name(a)).collect();
        names.sort_unstable();
        let _ = writeln!(out, "exogenous {}.", names.join(", "));
    }
    for law in theory.laws() {
        let _ = write!(out, "@{}: ", law.label);
        for (i, h) in law.head.iter().enumerate() {
            if i > 0 {
                out.push_str(" ; ");
            }
            out.push_str(theory.atom_name(h.atom));
            if h.symbolic {
                out.push_str(":*");
            } else if !h.prob.is_one() {
                let p = h.prob.exact_decimal().unwrap_or_else(|| h.prob.to_string());
                let _ = write!(out, ":{p}");
            }
        }
        if !law.body.is_empty() {
            out.push_str(" <- ");
            let lits: Vec<String> = law.body.iter().map(|l| l.display(theory.vocab()).to_string()).collect();
            out.push_str(&lits.join(", "));
        }
        out.push_str(".\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::validate_theory;
    use num_bigint::BigInt;

    #[test]
    fn single_law() {
        let c = parse_theory("shatters:0.9 <- throws_suzy.").unwrap();
        assert_eq!(c.laws.len(), 1);
        let law = &c.laws[0];
        assert_eq!(law.head.len(), 1);
        assert_eq!(c.vocab.name(law.head[0].atom), "shatters");
        assert_eq!(law.head[0].prob.numer(), &BigInt::from(9));
        assert_eq!(law.head[0].prob.denom(), &BigInt::from(10));
        assert_eq!(law.body, vec![Literal::pos(c.vocab.lookup("throws_suzy").unwrap())]);
    }

    #[test]
    fn deterministic_law() {
        let c = parse_theory("b <- c.").unwrap();
        assert_eq!(c.laws[0].head[0].prob, Probability::one());
        assert!(!c.laws[0].head[0].symbolic);
    }

    #[test]
    fn symbolic_vacuous_law() {
        let c = parse_theory("antidote:*.").unwrap();
        let h = &c.laws[0].head[0];
        assert_eq!(h.prob, Probability::half());
        assert!(h.symbolic);
        assert!(c.laws[0].body.is_empty());
    }

    #[test]
    fn labels_fractions_and_negation() {
        let c = parse_theory("% hi\n@x: a:1/3 ; b:.25 <- ~c, d.\ne <- .\n").unwrap();
        assert_eq!(c.laws[0].label.as_deref(), Some("x"));
        assert_eq!(c.laws[0].head[0].prob, Probability::new(1, 3));
        assert_eq!(c.laws[0].head[1].prob, Probability::new(1, 4));
        assert!(!c.laws[0].body[0].positive);
        assert_eq!(c.laws[0].line, Some(2));
        assert!(c.laws[1].body.is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_theory("a <- b.\nc:1.2 <- d.\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::ProbabilityOutOfRange("1.2".into()));

        let e = parse_theory("include foo.\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownDirective("include".into()));

        let e = parse_theory("a <- b\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnexpectedEnd { .. }));

        let e = parse_theory("Shatters <- b.").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UppercaseAtom(_)));

        let e = parse_theory("none <- b.").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ReservedWord(_)));

        let e = parse_theory("a:1/0.").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadProbability(_)));
    }

    #[test]
    fn serialization() {
        let t = validate_theory(
            parse_theory(
                "exogenous throws_suzy, throws_billy.\nshatters:0.9 <- throws_suzy.\nshatters:0.8 <- throws_billy.\n",
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(
            serialize_theory(&t),
            "exogenous throws_billy, throws_suzy.\n\
             @r1: shatters:0.9 <- throws_suzy.\n\
             @r2: shatters:0.8 <- throws_billy.\n"
        );
        let t = validate_theory(parse_theory("a:1/3 ; b:*.\n").unwrap()).unwrap();
        assert_eq!(serialize_theory(&t), "@r1: a:1/3 ; b:*.\n");
    }

    #[test]
    fn round_trip() {
        let src = "exogenous m.\n@burn1: burn:0.7 <- m, ~wet.\nwet:1/3.\nsmoke:1/2 ; ash:1/6 <- burn.\n";
        let t = validate_theory(parse_theory(src).unwrap()).unwrap();
        let again = validate_theory(parse_theory(&serialize_theory(&t)).unwrap()).unwrap();
        assert_eq!(t, again);
    }
}
