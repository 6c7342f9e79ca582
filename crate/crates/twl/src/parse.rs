//! Cursor shared by the word grammars: `x[1,2](poly)`, `X[i,j](poly)^-1`, `c(u,v)`, `a[i,j,m]`.

use crate::error::{Result, TwlError};
use crate::ring::{literal, Poly, Ring, Unit};

pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(TwlError::Parse { pos: self.pos, msg: msg.into() })
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn peek_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(s)
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.peek_str(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    /// Letters only: x, w, h, xa, X, hc, hh, hw, c, a.
    pub fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].chars().take_while(|c| c.is_ascii_alphabetic()).count();
        if len == 0 {
            return self.err("expected a letter name");
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    pub fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        match self.src[start..end].parse() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.err("expected an integer"),
        }
    }

    /// `[a,b]` or `[a,b,c]`, returning the integers.
    pub fn bracket_ints(&mut self, count: usize) -> Result<Vec<i64>> {
        self.expect("[")?;
        let mut out = Vec::with_capacity(count);
        for idx in 0..count {
            if idx > 0 {
                self.expect(",")?;
            }
            out.push(self.int()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    /// Text between balanced parentheses starting at the cursor, and its offset.
    /// With `split_comma`, a top-level comma ends the argument instead.
    fn balanced(&mut self, split_comma: bool) -> Result<(usize, &'a str)> {
        let start = self.pos;
        let mut depth = 0usize;
        for (off, ch) in self.src[start..].char_indices() {
            match ch {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    self.pos = start + off;
                    return Ok((start, &self.src[start..start + off]));
                }
                ')' => depth -= 1,
                ',' if depth == 0 && split_comma => {
                    self.pos = start + off;
                    return Ok((start, &self.src[start..start + off]));
                }
                _ => {}
            }
        }
        self.err("unbalanced parentheses")
    }

    /// `(poly)`.
    pub fn paren_poly(&mut self, ring: &Ring) -> Result<Poly> {
        self.expect("(")?;
        let (off, text) = self.balanced(false)?;
        let p = literal::parse_poly_at(ring, text, off)?;
        self.expect(")")?;
        Ok(p)
    }

    /// `(poly)` holding a unit.
    pub fn paren_unit(&mut self, ring: &Ring) -> Result<Unit> {
        let at = self.pos;
        let p = self.paren_poly(ring)?;
        p.as_unit().ok_or(TwlError::Parse { pos: at, msg: format!("`{p}` is not a unit") })
    }

    /// `(unit, unit)`.
    pub fn paren_unit_pair(&mut self, ring: &Ring) -> Result<(Unit, Unit)> {
        self.expect("(")?;
        let mut out = Vec::with_capacity(2);
        for idx in 0..2 {
            if idx > 0 {
                self.expect(",")?;
            }
            let (off, text) = self.balanced(idx == 0)?;
            let p = literal::parse_poly_at(ring, text, off)?;
            out.push(p.as_unit().ok_or(TwlError::Parse { pos: off, msg: format!("`{p}` is not a unit") })?);
        }
        self.expect(")")?;
        let v = out.pop().unwrap();
        Ok((out.pop().unwrap(), v))
    }

    /// Optional `^-1` / `^1`; returns true for an inverse.
    pub fn inverse_suffix(&mut self) -> Result<bool> {
        if !self.eat("^") {
            return Ok(false);
        }
        match self.int()? {
            -1 => Ok(true),
            1 => Ok(false),
            e => self.err(format!("only ^-1 and ^1 are allowed on letters, got ^{e}")),
        }
    }

    /// Between letters: `*` or end.
    pub fn separator(&mut self) -> Result<bool> {
        if self.at_end() {
            return Ok(false);
        }
        self.expect("*")?;
        Ok(true)
    }
}

/// Root literal `a[i,j,m]`.
pub fn parse_root(text: &str) -> Result<crate::roots::AffineRoot> {
    let mut c = Cursor::new(text);
    c.expect("a")?;
    let v = c.bracket_ints(3)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    if v[0] <= 0 || v[1] <= 0 {
        return Err(TwlError::Parse { pos: 0, msg: "indices are 1-based".into() });
    }
    crate::roots::AffineRoot::new(v[0] as usize, v[1] as usize, v[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_literal_round_trip() {
        let r = parse_root(" a[ 3,1, 1]").unwrap();
        assert_eq!(r.to_string(), "a[3,1,1]");
        assert_eq!(parse_root(&r.to_string()).unwrap(), r);
        assert!(parse_root("a[1,1,0]").is_err());
        assert!(parse_root("a[1,2]").is_err());
    }

    #[test]
    fn unit_pair_splits_on_top_level_comma() {
        let ring = Ring::finite_field(5, 1, 1).unwrap();
        let mut c = Cursor::new("(2*t^1, (3))");
        let (u, v) = c.paren_unit_pair(&ring).unwrap();
        assert_eq!(u.deg(), 1);
        assert_eq!(v.deg(), 0);
        assert!(c.at_end());
    }
}
