//! Text form of coefficients and twisted Laurent polynomials.
//!
//! Grammar (whitespace-insensitive):
//!   expr   := [+|-] term ((+|-) term)*
//!   term   := factor (* factor)*
//!   factor := atom [^ int]
//!   atom   := int | int/int | g | i | j | k | t | ( expr )
//! Factors multiply in written order, so `t*g` and `g*t` differ when τ ≠ id.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Elem, Poly, Ring};
use crate::error::{Result, TwlError};

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(TwlError::Parse { pos: self.offset + self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let Some(d) = self.digits() else { return self.err("expected an integer") };
        let v: i64 = match d.try_into() {
            Ok(v) => v,
            Err(_) => return self.err("integer out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else {
                if !self.eat(b'+') && !first {
                    break;
                }
                false
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let start = self.pos;
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.int()?;
        if e >= 0 {
            return Ok((0..e).fold(Poly::one(self.ring), |acc, _| &acc * &base));
        }
        match base.as_unit() {
            Some(u) => Ok(u.pow(e).to_poly()),
            None => {
                self.pos = start;
                self.err("negative power of a non-unit")
            }
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let r = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().unwrap();
                let d = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    match self.digits() {
                        Some(d) if !d.is_zero() => d,
                        _ => return self.err("expected a nonzero denominator"),
                    }
                } else {
                    BigInt::one()
                };
                let at = self.pos;
                match r.from_rational(&BigRational::new(n, d)) {
                    Ok(c) => Ok(Poly::constant(r, c)),
                    Err(e) => Err(TwlError::Parse { pos: self.offset + at, msg: e.to_string() }),
                }
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Poly::t_pow(r, 1))
            }
            Some(c @ (b'g' | b'i' | b'j' | b'k')) => {
                let at = self.pos;
                self.pos += 1;
                let e = match c {
                    b'g' => r.generator(),
                    b'i' => r.quat_basis(1),
                    b'j' => r.quat_basis(2),
                    _ => r.quat_basis(3),
                };
                e.map(|e| Poly::constant(r, e))
                    .map_err(|e| TwlError::Parse { pos: self.offset + at, msg: e.to_string() })
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a Laurent polynomial literal; `offset` shifts reported error positions.
pub fn parse_poly_at(ring: &Ring, text: &str, offset: usize) -> Result<Poly> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0, offset };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    parse_poly_at(ring, text, 0)
}

/// Parses a coefficient of D (no `t`).
pub fn parse_elem(ring: &Ring, text: &str) -> Result<Elem> {
    let p = parse_poly(ring, text)?;
    match p.max_exp() {
        None => Ok(ring.zero()),
        Some(0) if p.min_exp() == Some(0) => Ok(p.coeff(0)),
        _ => Err(TwlError::Parse { pos: 0, msg: "expected a coefficient without t".into() }),
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, t) in terms.into_iter().enumerate() {
        if idx > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

pub fn show_elem(ring: &Ring, x: &Elem) -> String {
    match x {
        Elem::F(v) => {
            let f = ring.field().expect("finite-field element");
            if f.k == 1 {
                return v.to_string();
            }
            let ds = f.digit_vec(*v);
            let terms = (0..ds.len())
                .rev()
                .filter(|&i| ds[i] != 0)
                .map(|i| {
                    let pw = match i {
                        0 => String::new(),
                        1 => "g".into(),
                        _ => format!("g^{i}"),
                    };
                    match (i, ds[i]) {
                        (0, d) => d.to_string(),
                        (_, 1) => pw,
                        (_, d) => format!("{d}*{pw}"),
                    }
                })
                .collect();
            join_terms(terms)
        }
        Elem::Q(v) => {
            let labels = ["", "i", "j", "k"];
            let terms = (0..4)
                .filter(|&i| !v[i].is_zero())
                .map(|i| {
                    let c = &v[i];
                    if i == 0 {
                        c.to_string()
                    } else if c.is_one() {
                        labels[i].to_string()
                    } else if (-c).is_one() {
                        format!("-{}", labels[i])
                    } else {
                        format!("{c}*{}", labels[i])
                    }
                })
                .collect();
            join_terms(terms)
        }
    }
}

/// A coefficient string that can stand as one factor of a product.
fn is_atomic(s: &str) -> bool {
    !s[1..].contains(['+', '-'])
}

pub fn show_poly(p: &Poly) -> String {
    let r = p.ring();
    let minus_one = r.from_int(-1);
    let terms = p
        .terms()
        .map(|(m, c)| {
            let cs = show_elem(r, c);
            if m == 0 {
                cs
            } else if r.is_one(c) {
                format!("t^{m}")
            } else if *c == minus_one {
                format!("-t^{m}")
            } else if is_atomic(&cs) {
                format!("{cs}*t^{m}")
            } else {
                format!("({cs})*t^{m}")
            }
        })
        .collect();
    join_terms(terms)
}

/// Canonical rational text, used by the quaternion printer and spec files.
pub fn show_rational(r: &BigRational) -> String {
    if r.is_negative() {
        format!("-{}", -r)
    } else {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_field_literals() {
        let r = Ring::finite_field(2, 2, 1).unwrap();
        let w = r.generator().unwrap();
        let p = parse_poly(&r, "g*t^1").unwrap();
        assert_eq!(p, Poly::monomial(&r, w.clone(), 1));
        assert_eq!(parse_poly(&r, "t*g").unwrap(), Poly::monomial(&r, r.add(&w, &r.one()), 1));
        assert_eq!(parse_elem(&r, "g+1").unwrap(), r.mul(&w, &w));
        assert_eq!(parse_poly(&r, " (g*t)^-1 ").unwrap(), Poly::monomial(&r, w, -1));
    }

    #[test]
    fn parses_quaternion_and_rational_literals() {
        let r = Ring::hamilton();
        let x = parse_elem(&r, "1/2-i+3*j+k").unwrap();
        assert_eq!(show_elem(&r, &x), "1/2-i+3*j+k");
        assert_eq!(parse_elem(&r, "i*j").unwrap(), r.quat_basis(3).unwrap());
        let f5 = Ring::finite_field(5, 1, 1).unwrap();
        assert_eq!(parse_elem(&f5, "1/2").unwrap(), f5.from_int(3));
        assert!(parse_elem(&f5, "1/5").is_err());
    }

    #[test]
    fn reports_error_positions() {
        let r = Ring::finite_field(2, 2, 1).unwrap();
        match parse_poly(&r, "g+*t") {
            Err(TwlError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly(&r, "i").is_err());
        assert!(parse_poly(&r, "(1+t)^-1").is_err());
        assert!(parse_poly(&r, "1)").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for ring in [
            Ring::finite_field(2, 2, 1).unwrap(),
            Ring::finite_field(3, 2, 1).unwrap(),
            Ring::finite_field(5, 1, 1).unwrap(),
            Ring::hamilton(),
        ] {
            for _ in 0..200 {
                let n = rng.gen_range(0..4);
                let p = Poly::from_terms(&ring, (0..n).map(|_| (rng.gen_range(-3..=3), ring.random_elem(&mut rng))));
                let text = show_poly(&p);
                assert_eq!(parse_poly(&ring, &text).unwrap(), p, "{text}");
            }
        }
    }
}
