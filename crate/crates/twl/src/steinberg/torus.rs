//! Torus words (products of ĥ_ij(u)^{±1}) and the certificates used to compare Steinberg words.
//!
//! Over F_q[t, t⁻¹] the torus words also map to a central extension T̃ of the diagonal group
//! by F_q^×: pairs (d, z) with (d, z)(d', z') = (dd', zz'β(d, d')) where
//! β(d, d') = ∏_{a≤b} tame(d_a, d'_b). The letter ĥ_ab(u) goes to (h_ab(u), tame(u, −1)^{[a<b]}).
//! This sends ĉ_ij(u, v) to tame(u, v); the audits check the T and TT relations against it.

use std::fmt;

use super::{hat_h, st_phi, StWord};
use crate::error::Result;
use crate::linear::Matrix;
use crate::ring::{Ring, Unit};
use crate::roots::FiniteRoot;
use crate::symbols::tame::{require_tame, tame_symbol, TameValue};

#[derive(Clone, PartialEq, Eq)]
pub struct TorusLetter {
    pub root: FiniteRoot,
    pub u: Unit,
    pub inv: bool,
}

impl fmt::Display for TorusLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hh[{},{}]({})", self.root.i, self.root.j, self.u)?;
        if self.inv {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TorusWord {
    ring: Ring,
    n: usize,
    letters: Vec<TorusLetter>,
}

impl fmt::Display for TorusWord {
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

impl fmt::Debug for TorusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TorusWord {
    pub fn empty(ring: &Ring, n: usize) -> TorusWord {
        TorusWord { ring: ring.clone(), n, letters: Vec::new() }
    }

    /// ĥ_ij(u).
    pub fn h(n: usize, i: usize, j: usize, u: &Unit) -> Result<TorusWord> {
        let root = super::check_pair(i, j, n)?;
        Ok(TorusWord { ring: u.ring().clone(), n, letters: vec![TorusLetter { root, u: u.clone(), inv: false }] })
    }

    /// ĉ_ij(u, v) = ĥ_ij(u) ĥ_ij(v) ĥ_ij(vu)⁻¹.
    pub fn c(n: usize, i: usize, j: usize, u: &Unit, v: &Unit) -> Result<TorusWord> {
        let parts = [TorusWord::h(n, i, j, u)?, TorusWord::h(n, i, j, v)?, TorusWord::h(n, i, j, &v.mul(u))?.inverse()];
        Ok(TorusWord::product(u.ring(), n, &parts))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[TorusLetter] {
        &self.letters
    }

    pub fn concat(&self, other: &TorusWord) -> TorusWord {
        let mut out = self.clone();
        out.letters.extend(other.letters.iter().cloned());
        out
    }

    pub fn inverse(&self) -> TorusWord {
        let letters = self.letters.iter().rev().map(|l| TorusLetter { inv: !l.inv, ..l.clone() }).collect();
        TorusWord { ring: self.ring.clone(), n: self.n, letters }
    }

    pub fn product<'a>(ring: &Ring, n: usize, parts: impl IntoIterator<Item = &'a TorusWord>) -> TorusWord {
        parts.into_iter().fold(TorusWord::empty(ring, n), |acc, w| acc.concat(w))
    }

    pub fn commutator(a: &TorusWord, b: &TorusWord) -> TorusWord {
        TorusWord::product(&a.ring, a.n, [a, b, &a.inverse(), &b.inverse()])
    }

    /// The x̂-word this stands for.
    pub fn to_st(&self) -> StWord {
        let mut out = StWord::empty(&self.ring, self.n);
        for l in &self.letters {
            let h = hat_h(self.n, l.root.i, l.root.j, &l.u).expect("letter fits");
            out.append(&if l.inv { h.inverse() } else { h });
        }
        out
    }

    /// Image in T̃; needs F_q[t, t⁻¹].
    pub fn tame_model(&self) -> Result<TorusElem> {
        require_tame(&self.ring)?;
        let mut acc = TorusElem::identity(&self.ring, self.n);
        for l in &self.letters {
            let g = TorusElem::h(self.n, l.root, &l.u)?;
            acc = acc.mul(&if l.inv { g.inv()? } else { g })?;
        }
        Ok(acc)
    }
}

/// An element (d, z) of T̃.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusElem {
    pub diag: Vec<Unit>,
    pub z: TameValue,
}

impl TorusElem {
    pub fn identity(ring: &Ring, n: usize) -> TorusElem {
        TorusElem { diag: vec![Unit::one(ring); n], z: TameValue::one(ring) }
    }

    fn h(n: usize, root: FiniteRoot, u: &Unit) -> Result<TorusElem> {
        let ring = u.ring();
        let mut diag = vec![Unit::one(ring); n];
        diag[root.i - 1] = u.clone();
        diag[root.j - 1] = u.inv();
        let z = if root.i < root.j { tame_symbol(u, &Unit::minus_one(ring))? } else { TameValue::one(ring) };
        Ok(TorusElem { diag, z })
    }

    fn beta(d: &[Unit], e: &[Unit]) -> Result<TameValue> {
        let mut acc = TameValue::one(d[0].ring());
        for a in 0..d.len() {
            for b in a..e.len() {
                acc = acc.mul(&tame_symbol(&d[a], &e[b])?);
            }
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &TorusElem) -> Result<TorusElem> {
        let diag = self.diag.iter().zip(&other.diag).map(|(a, b)| a.mul(b)).collect();
        let z = self.z.mul(&other.z).mul(&TorusElem::beta(&self.diag, &other.diag)?);
        Ok(TorusElem { diag, z })
    }

    pub fn inv(&self) -> Result<TorusElem> {
        let diag: Vec<Unit> = self.diag.iter().map(Unit::inv).collect();
        let z = self.z.mul(&TorusElem::beta(&self.diag, &diag)?).inv();
        Ok(TorusElem { diag, z })
    }

    pub fn is_identity(&self) -> bool {
        self.z.is_one() && self.diag.iter().all(Unit::is_one)
    }
}

/// One side of an audited identity: a torus word when it is one, a general word otherwise.
#[derive(Clone, Debug)]
pub enum StExpr {
    Torus(TorusWord),
    Word(StWord),
}

impl StExpr {
    pub fn word(&self) -> StWord {
        match self {
            StExpr::Torus(t) => t.to_st(),
            StExpr::Word(w) => w.clone(),
        }
    }

    pub fn certificate(&self) -> Result<Certificate> {
        let phi = st_phi(&self.word());
        let tame = match self {
            StExpr::Torus(t) if t.ring.is_commutative_untwisted() => Some(t.tame_model()?),
            _ => None,
        };
        Ok(Certificate { phi, tame })
    }
}

/// Images of a word under the implemented homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub phi: Matrix,
    pub tame: Option<TorusElem>,
}

impl Certificate {
    /// Agreement under every certificate both sides carry.
    pub fn agrees(&self, other: &Certificate) -> bool {
        self.phi == other.phi
            && match (&self.tame, &other.tame) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
    }

    pub fn is_trivial(&self) -> bool {
        self.phi.is_identity() && self.tame.as_ref().is_none_or(TorusElem::is_identity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_unit, sample_rng};

    fn f5() -> Ring {
        Ring::finite_field(5, 1, 0).unwrap()
    }

    #[test]
    fn hat_c_maps_to_the_tame_symbol() {
        let r = f5();
        for idx in 0..50 {
            let mut rng = sample_rng(2, "tame-c", idx);
            let (u, v) = (random_unit(&r, &mut rng, 3), random_unit(&r, &mut rng, 3));
            for (i, j) in [(1, 2), (2, 1), (3, 1)] {
                let m = TorusWord::c(3, i, j, &u, &v).unwrap().tame_model().unwrap();
                assert!(m.diag.iter().all(Unit::is_one));
                assert_eq!(m.z, tame_symbol(&u, &v).unwrap());
            }
        }
    }

    #[test]
    fn tt1_tt2_hold_for_every_index_order() {
        for r in [f5(), Ring::finite_field(7, 1, 0).unwrap(), Ring::finite_field(3, 2, 0).unwrap()] {
            let n = 4;
            for idx in 0..20 {
                let u = random_unit(&r, &mut sample_rng(3, "tt12", idx), 3);
                for i in 1..=n {
                    for j in (1..=n).filter(|&j| j != i) {
                        let tt1 = TorusWord::h(n, i, j, &u).unwrap().concat(&TorusWord::h(n, j, i, &u).unwrap());
                        assert!(tt1.tame_model().unwrap().is_identity(), "TT1 {i}{j} u={u}");
                        for k in (1..=n).filter(|&k| k != i && k != j) {
                            let parts = [
                                TorusWord::h(n, i, j, &u).unwrap(),
                                TorusWord::h(n, k, i, &u).unwrap(),
                                TorusWord::h(n, j, k, &u).unwrap(),
                            ];
                            let tt2 = TorusWord::product(&r, n, &parts);
                            assert!(tt2.tame_model().unwrap().is_identity(), "TT2 {i}{j}{k} u={u}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nontrivial_kernel_element() {
        // ĉ(t, 2) has trivial φ-image but tame value 3 over F_5.
        let r = f5();
        let c = StExpr::Torus(TorusWord::c(2, 1, 2, &Unit::t_pow(&r, 1), &Unit::from_int(&r, 2).unwrap()).unwrap());
        let cert = c.certificate().unwrap();
        assert!(cert.phi.is_identity());
        assert_eq!(cert.tame.as_ref().unwrap().z.value(), &r.from_int(3));
        assert!(!cert.is_trivial());
    }

    #[test]
    fn twisted_rings_get_phi_only() {
        let r = Ring::finite_field(3, 2, 1).unwrap();
        let c = StExpr::Torus(TorusWord::c(2, 1, 2, &Unit::t_pow(&r, 1), &Unit::one(&r)).unwrap());
        assert!(c.certificate().unwrap().tame.is_none());
        assert!(c.word().len() > 0);
    }
}
