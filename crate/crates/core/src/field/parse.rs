//! Expression grammar for exact field constants.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' exponent)?
//! atom   := integer | 'i' | 'zeta' '(' integer ',' integer ')' | '(' expr ')'
//! ```
//!
//! `i` is zeta(4,1); `zeta(m,k)` is e^{2 pi i k / m}. Rationals are spelled
//! with the division operator, e.g. `1/2`. Every zeta order must fit into
//! the session field after lcm-promotion under the cap.

use num_bigint::BigInt;

use super::{FieldCtx, Scalar};
use crate::error::{Error, Result};
use crate::field::data::lcm;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(s.parse().unwrap()));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            ',' => {
                chars.next();
                toks.push(Tok::Comma);
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    ctx: FieldCtx,
    /// running lcm of the session conductor and every zeta order seen
    promoted: u64,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(v)) => {
                let e: i64 = i64::try_from(&v)
                    .map_err(|_| Error::Parse("exponent too large".into()))?;
                Ok(if neg { -e } else { e })
            }
            got => Err(Error::Parse(format!("expected integer exponent, found {got:?}"))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            got => Err(Error::Parse(format!("expected integer, found {got:?}"))),
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(Scalar::from_rational(num_rational::BigRational::from_integer(v))),
            Some(Tok::Ident(name)) if name == "i" => {
                self.promote(4)?;
                Ok(Scalar::i())
            }
            Some(Tok::Ident(name)) if name == "zeta" => {
                self.expect(Tok::LParen)?;
                let m = self.int()?;
                self.expect(Tok::Comma)?;
                let k = self.int()?;
                self.expect(Tok::RParen)?;
                let m: u32 = u32::try_from(&m)
                    .ok()
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| Error::Parse("zeta order must be a positive integer".into()))?;
                let k: i64 = i64::try_from(&k)
                    .map_err(|_| Error::Parse("zeta exponent too large".into()))?;
                self.promote(m)?;
                Ok(Scalar::zeta(m, k))
            }
            Some(Tok::Ident(name)) => Err(Error::Parse(format!("unknown identifier '{name}'"))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            got => Err(Error::Parse(format!("unexpected token {got:?}"))),
        }
    }

    fn promote(&mut self, m: u32) -> Result<()> {
        let l = lcm(self.promoted, m as u64);
        self.ctx.check(l)?;
        self.promoted = l;
        Ok(())
    }
}

/// Parses an exact field constant. All roots of unity in the expression must
/// fit into one session field: the lcm of the session conductor and every
/// zeta order must stay under the cap.
pub fn parse_scalar(ctx: &FieldCtx, text: &str) -> Result<Scalar> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        ctx: *ctx,
        promoted: ctx.base_n as u64,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}: {:?}",
            p.pos, toks[p.pos]
        )));
    }
    Ok(v)
}
