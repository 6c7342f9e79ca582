//! Letters x/w/h over index pairs and free words in them.

use std::fmt;

use super::{affine_poly, affine_unit, Matrix, MonomialMatrix};
use crate::error::{Result, TwlError};
use crate::parse::Cursor;
use crate::ring::{Elem, Poly, Ring, Unit};
use crate::roots::{AffineRoot, FiniteRoot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    X,
    W,
    H,
}

impl Kind {
    fn tag(self) -> &'static str {
        match self {
            Kind::X => "x",
            Kind::W => "w",
            Kind::H => "h",
        }
    }
}

/// x_ij(f), w_ij(u) or h_ij(u); the payload of w and h is always a unit.
#[derive(Clone, PartialEq, Eq)]
pub struct Letter {
    pub kind: Kind,
    pub root: FiniteRoot,
    pub payload: Poly,
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]({})", self.kind.tag(), self.root.i, self.root.j, self.payload)
    }
}

impl Letter {
    pub fn x(i: usize, j: usize, f: Poly) -> Result<Letter> {
        Ok(Letter { kind: Kind::X, root: FiniteRoot::new(i, j)?, payload: f })
    }

    pub fn w(i: usize, j: usize, u: &Unit) -> Result<Letter> {
        Ok(Letter { kind: Kind::W, root: FiniteRoot::new(i, j)?, payload: u.to_poly() })
    }

    pub fn h(i: usize, j: usize, u: &Unit) -> Result<Letter> {
        Ok(Letter { kind: Kind::H, root: FiniteRoot::new(i, j)?, payload: u.to_poly() })
    }

    /// x_β̇(c) with the sidedness convention of `affine_poly`.
    pub fn xa(beta: &AffineRoot, c: &Elem, ring: &Ring) -> Result<Letter> {
        Letter::x(beta.root.i, beta.root.j, affine_poly(beta, c, ring))
    }

    pub fn wa(beta: &AffineRoot, c: &Elem, ring: &Ring) -> Result<Letter> {
        Letter::w(beta.root.i, beta.root.j, &affine_unit(beta, c, ring)?)
    }

    pub fn ha(beta: &AffineRoot, c: &Elem, ring: &Ring) -> Result<Letter> {
        Letter::h(beta.root.i, beta.root.j, &affine_unit(beta, c, ring)?)
    }

    pub fn ring(&self) -> &Ring {
        self.payload.ring()
    }

    /// Payload of a w or h letter.
    pub fn unit(&self) -> Unit {
        self.payload.as_unit().expect("w and h payloads are units")
    }

    pub fn fits(&self, n: usize) -> bool {
        self.root.i <= n && self.root.j <= n
    }

    /// x(f)⁻¹ = x(−f), w(u)⁻¹ = w(−u), h(u)⁻¹ = h(u⁻¹).
    pub fn inverse(&self) -> Letter {
        let payload = match self.kind {
            Kind::X | Kind::W => -&self.payload,
            Kind::H => self.unit().inv().to_poly(),
        };
        Letter { kind: self.kind, root: self.root, payload }
    }

    /// Monomial form of a w or h letter.
    pub fn monomial(&self, n: usize) -> Option<MonomialMatrix> {
        let (i, j) = (self.root.i, self.root.j);
        match self.kind {
            Kind::X => None,
            Kind::W => Some(MonomialMatrix::w(self.ring(), n, i, j, &self.unit())),
            Kind::H => Some(MonomialMatrix::h(self.ring(), n, i, j, &self.unit())),
        }
    }

    pub fn matrix(&self, n: usize) -> Result<Matrix> {
        let mut m = Matrix::identity(self.ring(), n);
        self.apply_right(&mut m)?;
        Ok(m)
    }

    /// m ← m·self.
    pub fn apply_right(&self, m: &mut Matrix) -> Result<()> {
        let n = m.n();
        if !self.fits(n) {
            return Err(TwlError::Domain(format!("{self} does not fit n = {n}")));
        }
        match self.monomial(n) {
            None => m.right_x(self.root.i, self.root.j, &self.payload),
            Some(p) => *m = m.mul_monomial(&p),
        }
        Ok(())
    }
}

/// A free word in x/w/h letters over one ring, for matrices of size n.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupWord {
    ring: Ring,
    n: usize,
    letters: Vec<Letter>,
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (idx, l) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl GroupWord {
    pub fn empty(ring: &Ring, n: usize) -> GroupWord {
        GroupWord { ring: ring.clone(), n, letters: Vec::new() }
    }

    pub fn new(ring: &Ring, n: usize, letters: Vec<Letter>) -> Result<GroupWord> {
        if let Some(bad) = letters.iter().find(|l| !l.fits(n)) {
            return Err(TwlError::Domain(format!("{bad} does not fit n = {n}")));
        }
        if letters.iter().any(|l| l.ring() != ring) {
            return Err(TwlError::Config("letters over different rings".into()));
        }
        Ok(GroupWord { ring: ring.clone(), n, letters })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        assert!(l.fits(self.n), "{l} does not fit n = {}", self.n);
        self.letters.push(l);
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        out.letters.extend(other.letters.iter().cloned());
        out
    }

    pub fn inverse(&self) -> GroupWord {
        let letters = self.letters.iter().rev().map(Letter::inverse).collect();
        GroupWord { ring: self.ring.clone(), n: self.n, letters }
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::identity(&self.ring, self.n);
        for l in &self.letters {
            l.apply_right(&mut m).expect("letters fit by construction");
        }
        m
    }

    /// Parses `x[i,j](poly)`, `w[i,j](poly)`, `h[i,j](poly)`, `xa[i,j,m](coeff)` joined by `*`, each with optional `^-1`.
    pub fn parse(ring: &Ring, n: usize, text: &str) -> Result<GroupWord> {
        let mut c = Cursor::new(text);
        let mut letters = Vec::new();
        if c.at_end() {
            return c.err("empty word");
        }
        if c.eat("1") {
            if !c.at_end() {
                return c.err("trailing input after the empty word");
            }
            return Ok(GroupWord::empty(ring, n));
        }
        loop {
            let start = c.pos;
            let name = c.ident()?;
            let letter = match name {
                "x" | "w" | "h" => {
                    let ij = c.bracket_ints(2)?;
                    let (i, j) = index_pair(start, ij[0], ij[1], n)?;
                    if name == "x" {
                        Letter::x(i, j, c.paren_poly(ring)?)?
                    } else {
                        let u = c.paren_unit(ring)?;
                        if name == "w" { Letter::w(i, j, &u)? } else { Letter::h(i, j, &u)? }
                    }
                }
                "xa" => {
                    let v = c.bracket_ints(3)?;
                    let (i, j) = index_pair(start, v[0], v[1], n)?;
                    let coeff_at = c.pos;
                    let p = c.paren_poly(ring)?;
                    let coeff = match (p.min_exp(), p.max_exp()) {
                        (None, _) => ring.zero(),
                        (Some(0), Some(0)) => p.coeff(0),
                        _ => return Err(TwlError::Parse { pos: coeff_at, msg: "affine payload must lie in D".into() }),
                    };
                    Letter::xa(&AffineRoot::new(i, j, v[2])?, &coeff, ring)?
                }
                other => {
                    return Err(TwlError::Parse { pos: start, msg: format!("unknown letter `{other}`") });
                }
            };
            letters.push(if c.inverse_suffix()? { letter.inverse() } else { letter });
            if !c.separator()? {
                break;
            }
        }
        Ok(GroupWord { ring: ring.clone(), n, letters })
    }
}

pub(crate) fn index_pair(at: usize, i: i64, j: i64, n: usize) -> Result<(usize, usize)> {
    let ok = |v: i64| v >= 1 && v as usize <= n;
    if !ok(i) || !ok(j) || i == j {
        return Err(TwlError::Parse { pos: at, msg: format!("bad index pair [{i},{j}] for n = {n}") });
    }
    Ok((i as usize, j as usize))
}
