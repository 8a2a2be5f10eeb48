//! Parser for polynomial text: the canonical grammar plus the looser forms
//! common in handwritten mathematics (`2x^2y`, `x y`, parentheses).

use std::iter::Peekable;
use std::str::{Chars, FromStr};

use num_bigint::BigInt;

use super::poly::MultiPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str, vars: &[&str]) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars: Peekable<Chars> = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                }
                out.push(Token::Int(s.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    s.push(d);
                    chars.next();
                }
                split_ident(&s, vars, &mut out)?;
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push(match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '^' => Token::Caret,
                    '(' => Token::Open,
                    _ => Token::Close,
                });
                chars.next();
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unexpected character {other:?} in polynomial"
                )))
            }
        }
    }
    Ok(out)
}

/// Splits a run like `xyz` or `x2y` into known variable names, longest
/// match first, so that `x^2y` style input parses.
fn split_ident(s: &str, vars: &[&str], out: &mut Vec<Token>) -> Result<()> {
    let mut rest = s;
    while !rest.is_empty() {
        let best = vars
            .iter()
            .filter(|v| rest.starts_with(**v))
            .max_by_key(|v| v.len());
        match best {
            Some(v) => {
                out.push(Token::Ident(v.to_string()));
                rest = &rest[v.len()..];
                // digits directly after a name are an implicit coefficient
                let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
                if !digits.is_empty() && !vars.iter().any(|w| w.starts_with(&rest[..1])) {
                    out.push(Token::Int(digits.parse().expect("digits")));
                    rest = &rest[digits.len()..];
                }
            }
            None => {
                return Err(Error::InvalidInput(format!("unknown variable in {s:?}")));
            }
        }
    }
    Ok(())
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                -self.term()?
            }
            Some(Token::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc * self.power()?;
                }
                // juxtaposition is multiplication
                Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::Open) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::InvalidInput("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::InvalidInput("expected an integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.next() {
            Some(Token::Int(n)) => Ok(MultiPoly::constant(self.vars, n)),
            Some(Token::Ident(v)) => MultiPoly::var(self.vars, &v),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::InvalidInput("unbalanced parenthesis".into())),
                }
            }
            Some(Token::Minus) => Ok(-self.power()?),
            other => Err(Error::InvalidInput(format!(
                "unexpected {} in polynomial",
                other.map_or("end of input".to_string(), |t| format!("{t:?}"))
            ))),
        }
    }
}

impl MultiPoly {
    /// Parses `text` over the given variable list.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self> {
        let tokens = tokenize(text, vars)?;
        if tokens.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        let mut parser = Parser {
            tokens,
            pos: 0,
            vars,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::InvalidInput(format!(
                "trailing input in polynomial {text:?}"
            )));
        }
        Ok(p)
    }
}

/// Infers the variables: identifiers sorted with `x < y < z` style letters
/// and numbered names (`x1 < x2 < x10`) in natural order.
impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut cur = String::new();
        for c in text.chars().chain(std::iter::once(' ')) {
            if c.is_ascii_alphanumeric() || c == '_' {
                if cur.is_empty() && c.is_ascii_digit() {
                    continue;
                }
                cur.push(c);
            } else if !cur.is_empty() {
                names.push(std::mem::take(&mut cur));
            }
        }
        // a bare run such as "xy" is treated as single letters
        let mut vars: Vec<String> = Vec::new();
        for n in names {
            if n.chars().skip(1).all(|c| c.is_ascii_digit()) {
                vars.push(n);
            } else {
                let letters: String = n.chars().filter(|c| c.is_ascii_alphabetic()).collect();
                vars.extend(letters.chars().map(|c| c.to_string()));
            }
        }
        vars.sort_by_key(|v| natural_key(v));
        vars.dedup();
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        MultiPoly::parse(text, &refs)
    }
}

fn natural_key(name: &str) -> (String, u64) {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (head, tail) = name.split_at(split);
    (head.to_string(), tail.parse().unwrap_or(0))
}
