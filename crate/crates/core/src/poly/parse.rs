//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' nat)?
//! base   := int | int '/' int | name ('[' nat (',' nat)* ']')? | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::{Poly, Rational, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at offset {offset})")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

struct Parser<'s, V, F> {
    src: &'s str,
    pos: usize,
    resolve: F,
    _v: std::marker::PhantomData<V>,
}

/// Parses a whole string as a polynomial. `resolve` maps a variable name and its
/// optional jet indices to a variable.
pub fn parse_poly<V, F>(text: &str, resolve: F) -> Result<Poly<V>, ParseError>
where
    V: Variable,
    F: FnMut(&str, Option<&[u32]>) -> Result<V, String>,
{
    let (p, end) = parse_poly_prefix(text, resolve)?;
    let rest = &text[end..];
    if let Some(c) = rest.chars().find(|c| !c.is_whitespace()) {
        let off = end + rest.find(c).unwrap();
        return Err(ParseError::new(off, format!("unexpected '{c}', expected operator or end of input")));
    }
    Ok(p)
}

/// Parses the longest polynomial prefix of `text`, returning it and the offset where parsing stopped.
pub fn parse_poly_prefix<V, F>(text: &str, resolve: F) -> Result<(Poly<V>, usize), ParseError>
where
    V: Variable,
    F: FnMut(&str, Option<&[u32]>) -> Result<V, String>,
{
    let mut p = Parser { src: text, pos: 0, resolve, _v: std::marker::PhantomData };
    let e = p.expr()?;
    p.skip_ws();
    Ok((e, p.pos))
}

impl<'s, V, F> Parser<'s, V, F>
where
    V: Variable,
    F: FnMut(&str, Option<&[u32]>) -> Result<V, String>,
{
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_tok(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn expr(&mut self) -> Result<Poly<V>, ParseError> {
        let mut acc = match self.peek_tok() {
            Some('-') => {
                let at = self.pos;
                self.pos += 1;
                -self.term_after(at, '-')?
            }
            Some('+') => {
                let at = self.pos;
                self.pos += 1;
                self.term_after(at, '+')?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek_tok() {
                Some(op @ ('+' | '-')) => {
                    let at = self.pos;
                    self.pos += 1;
                    let t = self.term_after(at, op)?;
                    acc = if op == '+' { &acc + &t } else { &acc - &t };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term_after(&mut self, op_at: usize, op: char) -> Result<Poly<V>, ParseError> {
        if !self.starts_factor() {
            return Err(ParseError::new(op_at, format!("expected a term after '{op}'")));
        }
        self.term()
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek_tok(), Some(c) if c.is_ascii_digit() || c.is_ascii_alphabetic() || c == '_' || c == '(')
    }

    fn term(&mut self) -> Result<Poly<V>, ParseError> {
        if !self.starts_factor() {
            let off = self.pos;
            return Err(match self.peek() {
                Some(c) => ParseError::new(off, format!("unexpected '{c}', expected a term")),
                None => ParseError::new(off, "unexpected end of input, expected a term"),
            });
        }
        let mut acc = self.factor()?;
        loop {
            match self.peek_tok() {
                Some('*') => {
                    let at = self.pos;
                    self.pos += 1;
                    if !self.starts_factor() {
                        return Err(ParseError::new(at, "expected a factor after '*'"));
                    }
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ if self.starts_factor() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<V>, ParseError> {
        let base = self.base()?;
        if self.peek_tok() == Some('^') {
            let at = self.pos;
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(ParseError::new(at, "malformed exponent: expected a natural number after '^'"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| ParseError::new(start, "malformed exponent: too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'s str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn base(&mut self) -> Result<Poly<V>, ParseError> {
        let c = self.peek_tok().ok_or_else(|| ParseError::new(self.pos, "unexpected end of input"))?;
        if c.is_ascii_digit() {
            let n: BigInt = self.digits().parse().unwrap();
            let save = self.pos;
            if self.peek_tok() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let d = self.digits();
                if d.is_empty() {
                    return Err(ParseError::new(at, "expected a denominator after '/'"));
                }
                let d: BigInt = d.parse().unwrap();
                if d == BigInt::from(0) {
                    return Err(ParseError::new(at, "zero denominator"));
                }
                return Ok(Poly::constant(Rational::new(n, d)));
            }
            self.pos = save;
            return Ok(Poly::constant(Rational::from_integer(n)));
        }
        if c == '(' {
            let at = self.pos;
            self.pos += 1;
            let e = self.expr()?;
            if self.peek_tok() != Some(')') {
                return Err(ParseError::new(at, "unclosed '('"));
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = self.pos;
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            let name = &self.src[start..self.pos];
            let mut index = None;
            if self.peek() == Some('[') {
                self.pos += 1;
                let mut idx = Vec::new();
                loop {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(ParseError::new(at, "expected a natural number in jet index"));
                    }
                    idx.push(d.parse::<u32>().map_err(|_| ParseError::new(at, "jet index too large"))?);
                    match self.peek_tok() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(ParseError::new(self.pos, "expected ',' or ']' in jet index")),
                    }
                }
                index = Some(idx);
            }
            let v = (self.resolve)(name, index.as_deref()).map_err(|m| ParseError::new(start, m))?;
            return Ok(Poly::monomial(super::Monomial::var(v, 1), Rational::one()));
        }
        Err(ParseError::new(self.pos, format!("unexpected '{c}', expected a term")))
    }
}
