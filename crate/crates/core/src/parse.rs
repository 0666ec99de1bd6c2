//! Text syntax for polynomials.
//!
//! Accepts sums and differences of products, `^` with a non-negative integer
//! exponent, optional `*` between factors, parentheses, and decimal
//! coefficients reduced mod `p`. An identifier that is not a variable name is
//! split greedily into variable names, so `xy` reads as `x*y` in `F_p[x, y]`.
//! The printer in [`crate::poly`] emits a subset of this syntax.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                    col,
                ));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(chars[start..i].iter().collect()), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    order: MonomialOrder,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero_in(self.ring, self.order);
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t)? } else { acc.add(&t)? };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.toks.get(self.pos).cloned() {
                Some((Tok::Num(n), _)) => {
                    self.pos += 1;
                    let k: u64 = n
                        .parse()
                        .map_err(|_| err(col, format!("exponent `{n}` is too large")))?;
                    base.pow(k).map_err(|e| match e {
                        Error::ExponentOverflow { .. } => err(col, e.to_string()),
                        other => other,
                    })
                }
                _ => Err(err(
                    col,
                    "expected a non-negative integer exponent after `^`",
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return Err(err(col, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let c = self.ring.field().from_decimal(&n).expect("digits");
                Ok(
                    Polynomial::monomial(self.ring, c, Monomial::one(self.ring.nvars()))
                        .with_order(self.order),
                )
            }
            Tok::Ident(name) => self.identifier(&name, col),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(err(self.col(), "expected `)`")),
                }
            }
            other => Err(err(col, format!("unexpected token {}", describe(&other)))),
        }
    }

    fn identifier(&self, name: &str, col: usize) -> Result<Polynomial> {
        let n = self.ring.nvars();
        let mut exps = vec![0u64; n];
        if let Some(i) = self.ring.var_index(name) {
            exps[i] = 1;
        } else {
            let mut rest = name;
            while !rest.is_empty() {
                let best = self
                    .ring
                    .vars()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| rest.starts_with(v.as_str()))
                    .max_by_key(|(_, v)| v.len());
                match best {
                    Some((i, v)) => {
                        exps[i] += 1;
                        rest = &rest[v.len()..];
                    }
                    None => return Err(err(col, format!("unknown variable `{name}`"))),
                }
            }
        }
        let m = Monomial::new(&exps)?;
        Ok(
            Polynomial::monomial(self.ring, crate::field::FieldElement::ONE, m)
                .with_order(self.order),
        )
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

/// Parses `text` in `ring`, sorting terms for grevlex.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    parse_polynomial_in(ring, text, MonomialOrder::default())
}

pub fn parse_polynomial_in(ring: &Ring, text: &str, order: MonomialOrder) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err(1, "empty polynomial"));
    }
    let mut parser = Parser {
        ring,
        order,
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    let f = parser.expr()?;
    if parser.pos < parser.toks.len() {
        let (t, c) = &parser.toks[parser.pos];
        return Err(err(*c, format!("unexpected token {}", describe(t))));
    }
    Ok(f)
}
