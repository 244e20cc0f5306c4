//! Recursive-descent reader for the ASCII polynomial grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | var | var '^' nat | '(' expr ')' | '-' factor
//! rational := int | int '/' nat
//! ```
//!
//! Multiplication is always explicit and whitespace is ignored.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::ring::RingSpec;
use super::Rat;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, ring: &Arc<RingSpec>) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected("`+`, `-`, `*` or end of input"));
    }
    Ok(out)
}

/// Parse a signed rational literal such as `-3`, `7/2` or `-1/4`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t),
    };
    let bad = || Error::Syntax {
        pos: 0,
        msg: format!("`{text}` is not a rational literal"),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    if num.is_empty()
        || den.is_empty()
        || !num.bytes().chain(den.bytes()).all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "zero denominator".into(),
        });
    }
    let r = Rat::new(n, d);
    Ok(if neg { -r } else { r })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<RingSpec>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self, expected: &str) -> Error {
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(b) if b.is_ascii_alphabetic() || *b == b'_' => {
                format!("identifier `{}`", self.peek_ident())
            }
            Some(b) => format!("`{}`", *b as char),
        };
        Error::Syntax {
            pos: self.pos,
            msg: format!("expected {expected}, found {found}"),
        }
    }

    fn peek_ident(&self) -> String {
        let end = self.src[self.pos..]
            .iter()
            .position(|b| !(b.is_ascii_alphanumeric() || *b == b'_'))
            .map_or(self.src.len(), |k| self.pos + k);
        String::from_utf8_lossy(&self.src[self.pos..end]).into_owned()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(Poly::constant(self.ring, r))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                let name = self.peek_ident();
                self.pos += name.len();
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or(Error::UnknownIdentifier { pos: start, name })?;
                let v = Poly::var(self.ring, idx);
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.exponent()?;
                    Ok(v.pow(e))
                } else {
                    Ok(v)
                }
            }
            _ => Err(self.unexpected("a number, variable, `(` or `-`")),
        }
    }

    fn digits(&mut self) -> Option<&[u8]> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn integer(&mut self) -> Option<BigInt> {
        let d = self.digits()?;
        // ASCII digits only, so the parse cannot fail.
        Some(std::str::from_utf8(d).ok()?.parse().ok()?)
    }

    fn rational(&mut self) -> Result<Rat> {
        let num = self
            .integer()
            .ok_or_else(|| self.unexpected("an integer"))?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den = self
                .integer()
                .ok_or_else(|| self.unexpected("a natural-number denominator"))?;
            if den.is_zero() {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            debug_assert!(!den.is_negative());
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let at = self.pos;
        let d = self.digits().ok_or(Error::BadExponent { pos: at })?;
        let s = std::str::from_utf8(d).map_err(|_| Error::BadExponent { pos: at })?;
        let e: u32 = s.parse().map_err(|_| Error::BadExponent { pos: at })?;
        // `X^2.5` and friends
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(Error::BadExponent { pos: at });
        }
        Ok(e)
    }
}
