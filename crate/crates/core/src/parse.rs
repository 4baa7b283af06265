//! Polynomial expression parser.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')' | '-' atom
//! ```
//!
//! Integer literals are reduced modulo the characteristic.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

pub fn parse_polynomial(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let field = *self.ring.field();
        let mut acc = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg(&field)
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&field, &self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&field, &self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let field = *self.ring.field();
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&field, &self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer_literal()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(self.ring.field(), e));
        }
        Ok(base)
    }

    fn integer_literal(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((self.src[self.pos] - b'0') as u64))
                .ok_or_else(|| self.err("integer literal overflows"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = *self.ring.field();
        let n = self.ring.nvars();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.atom()?.neg(&field))
            }
            Some(c) if c.is_ascii_digit() => {
                // reduce digit by digit so long literals never overflow
                let mut v = FieldElement::ZERO;
                let ten = field.from_u64(10);
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    let d = field.from_u64((self.src[self.pos] - b'0') as u64);
                    v = field.add(field.mul(v, ten), d);
                    self.pos += 1;
                }
                Ok(Polynomial::constant(n, v))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.vars().iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::term(FieldElement::ONE, Monomial::var(n, i))),
                    None => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
