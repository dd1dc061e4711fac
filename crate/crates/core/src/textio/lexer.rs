use std::fmt;

use crate::textio::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    /// `@name`, stored without the `@`.
    Label(String),
    Number(String),
    Star,
    Colon,
    Semi,
    Comma,
    Dot,
    Slash,
    LArrow,
    RArrow,
    Tilde,
    Bang,
    Amp,
    Bar,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Label(s) => write!(f, "`@{s}`"),
            Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LArrow => f.write_str("`<-`"),
            Tok::RArrow => f.write_str("`->`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits source text into tokens. `%` starts a comment running to the end
/// of the line.
pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let peek = chars.get(i + 1).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if is_ident_start(c) || (c == '@' && peek.is_some_and(is_ident_start)) {
            let start = if c == '@' { i + 1 } else { i };
            let mut j = start + 1;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            let word: String = chars[start..j].iter().collect();
            col += j - i;
            i = j;
            if c == '@' {
                Tok::Label(word)
            } else {
                Tok::Ident(word)
            }
        } else if c.is_ascii_digit() || (c == '.' && peek.is_some_and(|p| p.is_ascii_digit())) {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j < chars.len() && chars[j] == '.' && chars.get(j + 1).is_some_and(|p| p.is_ascii_digit()) {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            let num: String = chars[i..j].iter().collect();
            col += j - i;
            i = j;
            Tok::Number(num)
        } else {
            let (tok, n) = match (c, peek) {
                ('<', Some('-')) => (Tok::LArrow, 2),
                ('-', Some('>')) => (Tok::RArrow, 2),
                ('*', _) => (Tok::Star, 1),
                (':', _) => (Tok::Colon, 1),
                (';', _) => (Tok::Semi, 1),
                (',', _) => (Tok::Comma, 1),
                ('.', _) => (Tok::Dot, 1),
                ('/', _) => (Tok::Slash, 1),
                ('~', _) => (Tok::Tilde, 1),
                ('!', _) => (Tok::Bang, 1),
                ('&', _) => (Tok::Amp, 1),
                ('|', _) => (Tok::Bar, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                _ => {
                    return Err(ParseError { line: tl, col: tc, kind: ParseErrorKind::UnexpectedChar(c) });
                }
            };
            i += n;
            col += n;
            tok
        };
        out.push(Token { tok, line: tl, col: tc });
    }
    Ok(out)
}

/// Cursor over a token stream with position-aware errors.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    /// Position reported for errors at end of input.
    end: (usize, usize),
}

impl Cursor {
    pub fn new(src: &str) -> Result<Cursor, ParseError> {
        let toks = lex(src)?;
        let lines = src.split('\n').count().max(1);
        let last_len = src.rsplit('\n').next().map_or(0, |l| l.chars().count());
        Ok(Cursor { toks, pos: 0, end: (lines, last_len + 1) })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Line and column of the next token.
    pub fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, kind }
    }

    pub fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(ParseErrorKind::Unexpected { found: t.to_string(), expected: expected.into() }),
            None => self.error(ParseErrorKind::UnexpectedEnd { expected: expected.into() }),
        }
    }

    pub fn expect(&mut self, tok: &Tok, expected: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    pub fn ident(&mut self, expected: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(expected)),
        }
    }
}
