//! Text format for polynomials: `3*x0^2*x1 + 31999*x2^3`.
//!
//! A polynomial is a signed sum of terms; a term is a `*`-separated product of
//! integers, variables and parenthesized polynomials, each optionally raised
//! to `^exp`. Whitespace is ignored.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.error("integer too large"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let f = expr(ring, &mut cur)?;
    match cur.peek() {
        None => Ok(f),
        Some(c) => Err(cur.error(format!("unexpected `{}`", c as char))),
    }
}

fn expr(ring: &Arc<PolyRing>, cur: &mut Cursor) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(ring);
    let mut first = true;
    loop {
        let negative = match cur.peek() {
            Some(b'+') if !first => {
                cur.pos += 1;
                false
            }
            Some(b'-') => {
                cur.pos += 1;
                true
            }
            _ if first => false,
            None => return Ok(acc),
            Some(_) => return Ok(acc),
        };
        first = false;
        let t = term(ring, cur)?;
        acc = if negative { acc.try_sub(&t)? } else { acc.try_add(&t)? };
        if !matches!(cur.peek(), Some(b'+') | Some(b'-')) {
            return Ok(acc);
        }
    }
}

fn term(ring: &Arc<PolyRing>, cur: &mut Cursor) -> Result<Polynomial> {
    let mut acc = factor(ring, cur)?;
    while cur.peek() == Some(b'*') {
        cur.pos += 1;
        acc = acc.try_mul(&factor(ring, cur)?)?;
    }
    Ok(acc)
}

fn factor(ring: &Arc<PolyRing>, cur: &mut Cursor) -> Result<Polynomial> {
    let base = match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let p = ring.field().characteristic() as u64;
            let n = cur.number()? % p;
            Polynomial::constant(ring, n as i64)
        }
        Some(c) if c.is_ascii_alphabetic() => {
            let start = cur.pos;
            let name = cur.ident();
            let idx = ring.var_index(name).map_err(|_| {
                cur.pos = start;
                cur.error(format!("unknown variable `{name}`"))
            })?;
            Polynomial::var(ring, idx)
        }
        Some(b'(') => {
            cur.pos += 1;
            let inner = expr(ring, cur)?;
            if cur.peek() != Some(b')') {
                return Err(cur.error("expected `)`"));
            }
            cur.pos += 1;
            inner
        }
        None => return Err(cur.error("dangling operator")),
        _ => return Err(cur.error("expected coefficient, variable or `(`")),
    };
    if cur.peek() != Some(b'^') {
        return Ok(base);
    }
    cur.pos += 1;
    let e = cur.number()?;
    let d = base.degree().unwrap_or(0) as u64;
    if d.saturating_mul(e) > u16::MAX as u64 {
        return Err(cur.error("exponent too large"));
    }
    Ok(base.pow(e as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::standard(3, 32003).unwrap()
    }

    #[test]
    fn accepts_reference_format() {
        let f = parse_polynomial(&ring(), "3*x0^2*x1 + 31999*x2^3").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "3*x0^2*x1 + 31999*x2^3");
    }

    #[test]
    fn whitespace_and_signs() {
        let a = parse_polynomial(&ring(), " - x0 *x1+ 2 * x2^ 2 ").unwrap();
        let b = parse_polynomial(&ring(), "32002*x0*x1 + 2*x2^2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_position() {
        let err = parse_polynomial(&ring(), "x0 +\n  y").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 3)),
            e => panic!("unexpected {e}"),
        }
        assert!(parse_polynomial(&ring(), "x0 + ").is_err());
        assert!(parse_polynomial(&ring(), "").is_err());
        assert!(parse_polynomial(&ring(), "x0 x1").is_err());
        assert!(parse_polynomial(&ring(), "(x0 + x1").is_err());
    }

    #[test]
    fn products_of_sums() {
        let r = ring();
        let a = parse_polynomial(&r, "x0*(x0 - 2*x1)^2 - (x2)").unwrap();
        let b = parse_polynomial(&r, "x0^3 - 4*x0^2*x1 + 4*x0*x1^2 - x2").unwrap();
        assert_eq!(a, b);
    }
}
