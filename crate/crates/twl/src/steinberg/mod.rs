//! Words in the Steinberg generators x̂_ij(f), the projection φ onto E(n, D_τ), and the
//! ŵ/ĥ/ĉ builders. Equality in St is never decided; words are compared through
//! certificates (see `torus`).

pub mod audit;
pub mod torus;

use std::fmt;

use crate::error::{Result, TwlError};
use crate::linear::{index_pair, Matrix};
use crate::parse::Cursor;
use crate::ring::{Poly, Ring, Unit};
use crate::roots::FiniteRoot;

/// x̂_ij(f) or its formal inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct StLetter {
    pub root: FiniteRoot,
    pub payload: Poly,
    pub inv: bool,
}

impl fmt::Display for StLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{},{}]({})", self.root.i, self.root.j, self.payload)?;
        if self.inv {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl StLetter {
    pub fn inverse(&self) -> StLetter {
        StLetter { root: self.root, payload: self.payload.clone(), inv: !self.inv }
    }

    fn cancels(&self, other: &StLetter) -> bool {
        self.root == other.root && self.inv != other.inv && self.payload == other.payload
    }
}

/// A word in x̂ letters, freely reduced and nothing more.
#[derive(Clone, PartialEq, Eq)]
pub struct StWord {
    ring: Ring,
    n: usize,
    letters: Vec<StLetter>,
}

impl fmt::Display for StWord {
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

impl fmt::Debug for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<FiniteRoot> {
    if i > n || j > n {
        return Err(TwlError::Domain(format!("root ({i},{j}) does not fit n = {n}")));
    }
    FiniteRoot::new(i, j)
}

impl StWord {
    pub fn empty(ring: &Ring, n: usize) -> StWord {
        StWord { ring: ring.clone(), n, letters: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[StLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends with free cancellation against the last letter.
    pub fn push(&mut self, l: StLetter) {
        assert!(l.root.i <= self.n && l.root.j <= self.n, "{l} does not fit n = {}", self.n);
        if self.letters.last().is_some_and(|last| last.cancels(&l)) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn append(&mut self, other: &StWord) {
        for l in &other.letters {
            self.push(l.clone());
        }
    }

    pub fn concat(&self, other: &StWord) -> StWord {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn inverse(&self) -> StWord {
        StWord { ring: self.ring.clone(), n: self.n, letters: self.letters.iter().rev().map(StLetter::inverse).collect() }
    }

    pub fn product<'a>(ring: &Ring, n: usize, parts: impl IntoIterator<Item = &'a StWord>) -> StWord {
        parts.into_iter().fold(StWord::empty(ring, n), |acc, w| acc.concat(w))
    }

    /// a b a⁻¹ b⁻¹.
    pub fn commutator(a: &StWord, b: &StWord) -> StWord {
        StWord::product(&a.ring, a.n, [a, b, &a.inverse(), &b.inverse()])
    }

    /// Parses `X[i,j](poly)`, and the macros `hw[i,j](u)`, `hh[i,j](u)`, `hc(u,v)`, joined by `*`
    /// with optional `^-1`; `1` is the empty word.
    pub fn parse(ring: &Ring, n: usize, text: &str) -> Result<StWord> {
        let mut c = Cursor::new(text);
        if c.at_end() {
            return c.err("empty word");
        }
        if c.eat("1") {
            if !c.at_end() {
                return c.err("trailing input after the empty word");
            }
            return Ok(StWord::empty(ring, n));
        }
        let mut out = StWord::empty(ring, n);
        loop {
            let start = c.pos;
            let name = c.ident()?;
            let piece = match name {
                "X" | "hw" | "hh" => {
                    let ij = c.bracket_ints(2)?;
                    let (i, j) = index_pair(start, ij[0], ij[1], n)?;
                    match name {
                        "X" => hat_x(ring, n, i, j, c.paren_poly(ring)?)?,
                        "hw" => hat_w(n, i, j, &c.paren_unit(ring)?)?,
                        _ => hat_h(n, i, j, &c.paren_unit(ring)?)?,
                    }
                }
                "hc" => {
                    if n < 2 {
                        return c.err("hc needs n >= 2");
                    }
                    let (u, v) = c.paren_unit_pair(ring)?;
                    hat_c(n, &u, &v)?
                }
                other => return Err(TwlError::Parse { pos: start, msg: format!("unknown Steinberg letter `{other}`") }),
            };
            out.append(&if c.inverse_suffix()? { piece.inverse() } else { piece });
            if !c.separator()? {
                break;
            }
        }
        Ok(out)
    }
}

/// x̂_ij(f) as a one-letter word.
pub fn hat_x(ring: &Ring, n: usize, i: usize, j: usize, f: Poly) -> Result<StWord> {
    let root = check_pair(i, j, n)?;
    Ok(StWord { ring: ring.clone(), n, letters: vec![StLetter { root, payload: f, inv: false }] })
}

/// ŵ_ij(u) = x̂_ij(u) x̂_ji(−u⁻¹) x̂_ij(u).
pub fn hat_w(n: usize, i: usize, j: usize, u: &Unit) -> Result<StWord> {
    let ring = u.ring();
    let a = hat_x(ring, n, i, j, u.to_poly())?;
    let b = hat_x(ring, n, j, i, u.inv().neg().to_poly())?;
    Ok(StWord::product(ring, n, [&a, &b, &a]))
}

/// ĥ_ij(u) = ŵ_ij(u) ŵ_ij(−1).
pub fn hat_h(n: usize, i: usize, j: usize, u: &Unit) -> Result<StWord> {
    Ok(hat_w(n, i, j, u)?.concat(&hat_w(n, i, j, &Unit::minus_one(u.ring()))?))
}

/// ĉ_ij(u, v) = ĥ_ij(u) ĥ_ij(v) ĥ_ij(vu)⁻¹.
pub fn hat_c_ij(n: usize, i: usize, j: usize, u: &Unit, v: &Unit) -> Result<StWord> {
    let ring = u.ring();
    let parts = [hat_h(n, i, j, u)?, hat_h(n, i, j, v)?, hat_h(n, i, j, &v.mul(u))?.inverse()];
    Ok(StWord::product(ring, n, &parts))
}

/// ĉ(u, v) = ĉ_12(u, v).
pub fn hat_c(n: usize, u: &Unit, v: &Unit) -> Result<StWord> {
    hat_c_ij(n, 1, 2, u, v)
}

/// φ(x̂_ij(f)) = x_ij(f).
pub fn st_phi(w: &StWord) -> Matrix {
    let mut m = Matrix::identity(&w.ring, w.n);
    for l in &w.letters {
        let f = if l.inv { -&l.payload } else { l.payload.clone() };
        m.right_x(l.root.i, l.root.j, &f);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{gen_h, gen_x, MonomialMatrix};
    use crate::ring::literal::parse_poly;
    use crate::sample::{random_poly, random_unit, sample_rng};

    fn f4() -> Ring {
        Ring::finite_field(2, 2, 1).unwrap()
    }

    #[test]
    fn phi_of_generators() {
        let r = f4();
        let f = parse_poly(&r, "g*t+1").unwrap();
        assert_eq!(st_phi(&hat_x(&r, 3, 1, 2, f.clone()).unwrap()), gen_x(3, 1, 2, &f).unwrap());
        assert!(st_phi(&StWord::empty(&r, 3)).is_identity());
        let u = Unit::new(&r, r.generator().unwrap(), 2).unwrap();
        assert_eq!(st_phi(&hat_h(3, 2, 3, &u).unwrap()), gen_h(3, 2, 3, &u).unwrap());
    }

    #[test]
    fn phi_of_hat_c_is_the_commutator() {
        let r = f4();
        let om = r.generator().unwrap();
        let u = Unit::new(&r, om.clone(), 1).unwrap();
        let v = Unit::scalar(&r, om.clone()).unwrap();
        let want = MonomialMatrix::diag(vec![Unit::scalar(&r, om).unwrap(), Unit::one(&r)]).to_matrix();
        assert_eq!(st_phi(&hat_c(2, &u, &v).unwrap()), want);
        assert!(st_phi(&hat_c(2, &Unit::one(&r), &Unit::one(&r)).unwrap()).is_identity());
    }

    #[test]
    fn phi_is_a_homomorphism() {
        let r = Ring::finite_field(3, 2, 1).unwrap();
        for idx in 0..20 {
            let mut rng = sample_rng(5, "phi-hom", idx);
            let mut rand_word = || {
                let mut w = StWord::empty(&r, 3);
                for _ in 0..4 {
                    let ij = crate::sample::distinct_indices(3, 2, &mut rng);
                    w.append(&hat_x(&r, 3, ij[0], ij[1], random_poly(&r, &mut rng, 2)).unwrap());
                    w.append(&hat_h(3, ij[1], ij[0], &random_unit(&r, &mut rng, 2)).unwrap());
                }
                w
            };
            let (a, b) = (rand_word(), rand_word());
            assert_eq!(st_phi(&a.concat(&b)), st_phi(&a).mul(&st_phi(&b)));
            assert!(st_phi(&a.concat(&a.inverse())).is_identity());
        }
    }

    #[test]
    fn free_reduction_only() {
        let r = f4();
        let one = Poly::one(&r);
        let x = hat_x(&r, 2, 1, 2, one.clone()).unwrap();
        assert!(x.concat(&x.inverse()).is_empty());
        // x̂(1)x̂(1) is not rewritten to x̂(2) = x̂(0).
        assert_eq!(x.concat(&x).len(), 2);
        let w = hat_w(2, 1, 2, &Unit::one(&r)).unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn parse_macros() {
        let r = Ring::finite_field(5, 1, 0).unwrap();
        let w = StWord::parse(&r, 2, "X[1,2](2*t^1)*hh[2,1](3)^-1*hc(t,2)").unwrap();
        let u = Unit::t_pow(&r, 1);
        let two = Unit::from_int(&r, 2).unwrap();
        let mut want = hat_x(&r, 2, 1, 2, parse_poly(&r, "2*t").unwrap()).unwrap();
        want.append(&hat_h(2, 2, 1, &Unit::from_int(&r, 3).unwrap()).unwrap().inverse());
        want.append(&hat_c(2, &u, &two).unwrap());
        assert_eq!(w, want);
        assert_eq!(StWord::parse(&r, 2, &w.to_string()).unwrap(), w);
        assert!(StWord::parse(&r, 2, "1").unwrap().is_empty());
        for bad in ["", "X[1,1](1)", "hh[1,2](1+t)", "Y[1,2](1)", "hc(0,1)"] {
            assert!(StWord::parse(&r, 2, bad).is_err(), "{bad}");
        }
    }
}
