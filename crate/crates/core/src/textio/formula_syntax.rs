use crate::formula::Formula;
use crate::textio::lexer::{Cursor, Tok};
use crate::textio::{check_atom_name, ParseError, ParseErrorKind};

/// Parses `!`/`~` (negation), `&` (conjunction), `|` (disjunction),
/// parentheses and the constants `true`/`false`. Negation binds tightest,
/// then conjunction, then disjunction. Atom names are checked against a
/// vocabulary only when the formula is resolved.
pub fn parse_formula(text: &str) -> Result<Formula<String>, ParseError> {
    let mut cur = Cursor::new(text)?;
    if cur.at_end() {
        return Err(cur.error(ParseErrorKind::EmptyFormula));
    }
    let f = disjunction(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.unexpected("`&`, `|` or end of formula"));
    }
    Ok(f)
}

fn disjunction(cur: &mut Cursor) -> Result<Formula<String>, ParseError> {
    let mut f = conjunction(cur)?;
    while cur.eat(&Tok::Bar) {
        f = Formula::or(f, conjunction(cur)?);
    }
    Ok(f)
}

fn conjunction(cur: &mut Cursor) -> Result<Formula<String>, ParseError> {
    let mut f = unary(cur)?;
    while cur.eat(&Tok::Amp) {
        f = Formula::and(f, unary(cur)?);
    }
    Ok(f)
}

fn unary(cur: &mut Cursor) -> Result<Formula<String>, ParseError> {
    if cur.eat(&Tok::Bang) || cur.eat(&Tok::Tilde) {
        return Ok(Formula::not(unary(cur)?));
    }
    if cur.eat(&Tok::LParen) {
        let f = disjunction(cur)?;
        cur.expect(&Tok::RParen, "`)`")?;
        return Ok(f);
    }
    let at = cur.here();
    let name = cur.ident("an atom, `!`, `(`, `true` or `false`")?;
    match name.as_str() {
        "true" => Ok(Formula::Const(true)),
        "false" => Ok(Formula::Const(false)),
        _ => {
            check_atom_name(&name).map_err(|kind| ParseError { line: at.0, col: at.1, kind })?;
            Ok(Formula::Atom(name))
        }
    }
}

/// A comma-separated atom list such as `throws_suzy,throws_billy`; the
/// empty string is the empty list.
pub fn parse_context(text: &str) -> Result<Vec<String>, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        let at = cur.here();
        let name = cur.ident("an atom")?;
        check_atom_name(&name).map_err(|kind| ParseError { line: at.0, col: at.1, kind })?;
        out.push(name);
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    if !cur.at_end() {
        return Err(cur.unexpected("`,` or end of list"));
    }
    Ok(out)
}

/// `atom` or `~atom` (also `!atom`); returns the name and its polarity.
pub fn parse_literal(text: &str) -> Result<(String, bool), ParseError> {
    let mut cur = Cursor::new(text)?;
    let positive = !(cur.eat(&Tok::Tilde) || cur.eat(&Tok::Bang));
    let at = cur.here();
    let name = cur.ident("an atom")?;
    check_atom_name(&name).map_err(|kind| ParseError { line: at.0, col: at.1, kind })?;
    if !cur.at_end() {
        return Err(cur.unexpected("end of literal"));
    }
    Ok((name, positive))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula<String> {
        Formula::Atom(s.to_string())
    }

    #[test]
    fn conjunction_with_negation() {
        assert_eq!(
            parse_formula("shatters & !dead").unwrap(),
            Formula::and(atom("shatters"), Formula::not(atom("dead")))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_formula("a | (b & !c)").unwrap(),
            Formula::or(atom("a"), Formula::and(atom("b"), Formula::not(atom("c"))))
        );
        assert_eq!(parse_formula("a | b & c").unwrap(), Formula::or(atom("a"), Formula::and(atom("b"), atom("c"))));
        assert_eq!(parse_formula("~a & b").unwrap(), Formula::and(Formula::not(atom("a")), atom("b")));
    }

    #[test]
    fn empty_and_malformed() {
        assert_eq!(parse_formula("").unwrap_err().kind, ParseErrorKind::EmptyFormula);
        assert_eq!(parse_formula("  % nothing").unwrap_err().kind, ParseErrorKind::EmptyFormula);
        assert!(parse_formula("a &").is_err());
        assert!(parse_formula("(a").is_err());
        assert!(parse_formula("a b").is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(parse_formula("true").unwrap(), Formula::Const(true));
        assert_eq!(parse_formula("!false").unwrap(), Formula::not(Formula::Const(false)));
    }

    #[test]
    fn contexts_and_literals() {
        assert_eq!(parse_context("throws_suzy,throws_billy").unwrap(), ["throws_suzy", "throws_billy"]);
        assert!(parse_context("").unwrap().is_empty());
        assert!(parse_context("a,,b").is_err());
        assert_eq!(parse_literal("~death").unwrap(), ("death".to_string(), false));
        assert_eq!(parse_literal("antidote").unwrap(), ("antidote".to_string(), true));
        assert!(parse_literal("a & b").is_err());
    }
}
