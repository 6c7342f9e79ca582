//! Compatible pairs (e, w̃) with ρ(e) = ψ(w̃) and the permutations λ, μ, ν and their duals.

use std::fmt;

use super::{w_one, HTilde, NTilde};
use crate::bruhat::{Branch, Factorization, Side};
use crate::error::{domain, internal, Result, TwlError};
use crate::linear::{Letter, Matrix, MonomialMatrix};
use crate::ring::{Elem, Ring, Unit};
use crate::roots::AffineRoot;

/// Which lifts w̃_ȧ to use in ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// w̃_α(1) for finite simple α and h̃_{1n}(−t⁻¹)w̃_{1n}(1) for α̇₀.
    Corrected,
    /// At n = 2: w₁ and h̃(−t⁻¹)w₁, as displayed for the rank-one case. Same as `Corrected` for n ≥ 3.
    Printed,
}

fn simple_index(a: &AffineRoot, n: usize) -> Result<usize> {
    a.simple_index(n).ok_or_else(|| TwlError::Domain(format!("{a} is not a simple affine root for n = {n}")))
}

/// w̃_ȧ.
pub fn w_dot(ring: &Ring, n: usize, a: &AffineRoot, lift: Lift) -> Result<NTilde> {
    let idx = simple_index(a, n)?;
    let printed = lift == Lift::Printed && n == 2;
    let w1 = NTilde::w_simple(ring, n, 1)?;
    match idx {
        0 => {
            let h = HTilde::letter(n, 1, n, &Unit::t_pow(ring, -1).neg())?;
            NTilde::from_h(h).mul(&if printed { w1 } else { w_one(ring, n, 1, n)? })
        }
        k if printed => {
            debug_assert_eq!(k, 1);
            Ok(w1)
        }
        k => NTilde::w_simple(ring, n, k)?.inverse(),
    }
}

/// h̃_ȧ(f) for f ∈ D^×: h̃_α(f), or h̃_{1n}(−f⁻¹t⁻¹)h̃_{1n}(−t⁻¹)⁻¹ for α̇₀.
pub fn h_dot(ring: &Ring, n: usize, a: &AffineRoot, f: &Elem) -> Result<HTilde> {
    let idx = simple_index(a, n)?;
    let fu = Unit::scalar(ring, f.clone())?;
    if idx == 0 {
        let ti = Unit::t_pow(ring, -1);
        let first = HTilde::letter(n, 1, n, &fu.inv().mul(&ti).neg())?;
        Ok(first.mul(&HTilde::letter(n, 1, n, &ti.neg())?.inverse()))
    } else {
        HTilde::letter(n, idx, idx + 1, &fu)
    }
}

/// (e, w̃) with ρ(e) = ψ(w̃).
#[derive(Clone)]
pub struct XPair {
    pub e: Factorization,
    pub wt: NTilde,
}

impl fmt::Display for XPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e: w={} | w~: {}", self.e.w(), self.wt)
    }
}

impl fmt::Debug for XPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The letters of a word for π(h): z(c(a, b)) ↦ h₁₂(a)h₁₂(b)h₁₂(ba)⁻¹, then h₁ₘ(v).
fn pi_letters(h: &HTilde) -> Result<Vec<Letter>> {
    h.letters()
        .into_iter()
        .map(|l| {
            let x = Letter::h(l.i, l.j, &l.u)?;
            Ok(if l.inv { x.inverse() } else { x })
        })
        .collect()
}

impl XPair {
    pub fn identity(ring: &Ring, n: usize) -> Result<XPair> {
        Ok(XPair { e: Factorization::identity(ring, n), wt: NTilde::identity(ring, n)? })
    }

    pub fn new(e: Factorization, wt: NTilde) -> Result<XPair> {
        let p = XPair { e, wt };
        if !p.is_compatible() {
            return domain(format!("rho(e) = {} differs from psi(w~) = {}", p.e.w(), p.wt.psi()));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.e.n()
    }

    pub fn ring(&self) -> &Ring {
        self.e.ring()
    }

    pub fn is_compatible(&self) -> bool {
        self.e.w() == &self.wt.psi()
    }

    fn checked(self, what: &str) -> Result<XPair> {
        if self.is_compatible() {
            Ok(self)
        } else {
            internal(format!("{what}: rho(e) = {} but psi(w~) = {}", self.e.w(), self.wt.psi()))
        }
    }

    /// Matrix parts equal and w̃-parts certificate-equal.
    pub fn same(&self, other: &XPair) -> Result<bool> {
        Ok(self.e.matrix() == other.e.matrix() && self.wt.same(&other.wt)?)
    }

    /// λ(h): (ψ(h)e, h w̃). When π(h) has degree-zero entries the factorization is
    /// conjugated directly; otherwise it is rebuilt letter by letter (the flag reports this),
    /// and a result outside X is a domain error.
    pub fn lambda(&self, h: &HTilde) -> Result<(XPair, bool)> {
        let d = h.pi();
        let wt = NTilde::from_h(h.clone()).mul(&self.wt)?;
        if d.in_t0() {
            let e = Factorization::from_parts(self.e.u().conj_by(&d), d.mul(self.e.w()), self.e.v().clone())?;
            return Ok((XPair { e, wt }.checked("lambda")?, false));
        }
        let mut e = self.e.clone();
        for l in pi_letters(h)?.iter().rev() {
            e.absorb_left(l)?;
        }
        let p = XPair { e, wt };
        if !p.is_compatible() {
            return domain(format!("lambda(h) leaves X: rho(psi(h)e) = {} but psi(h w~) = {}", p.e.w(), p.wt.psi()));
        }
        Ok((p, true))
    }

    /// λ(h)*: (e ψ(h), w̃ h).
    pub fn lambda_star(&self, h: &HTilde) -> Result<(XPair, bool)> {
        let d = h.pi();
        let wt = self.wt.mul(&NTilde::from_h(h.clone()))?;
        if d.in_t0() {
            let e = Factorization::from_parts(self.e.u().clone(), self.e.w().mul(&d), self.e.v().conj_by(&d.inv()))?;
            return Ok((XPair { e, wt }.checked("lambda*")?, false));
        }
        let mut e = self.e.clone();
        for l in &pi_letters(h)? {
            e.absorb_right(l)?;
        }
        let p = XPair { e, wt };
        if !p.is_compatible() {
            return domain(format!("lambda*(h) leaves X: rho(e psi(h)) = {} but psi(w~ h) = {}", p.e.w(), p.wt.psi()));
        }
        Ok((p, true))
    }

    /// μ(u): (ue, w̃).
    pub fn mu(&self, u: &Matrix) -> Result<XPair> {
        let e = Factorization::from_parts(u.mul(self.e.u()), self.e.w().clone(), self.e.v().clone())?;
        Ok(XPair { e, wt: self.wt.clone() })
    }

    /// μ(u)*: (eu, w̃).
    pub fn mu_star(&self, u: &Matrix) -> Result<XPair> {
        let e = Factorization::from_parts(self.e.u().clone(), self.e.w().clone(), self.e.v().mul(u))?;
        Ok(XPair { e, wt: self.wt.clone() })
    }

    /// ν_ȧ: (w_ȧ(1)e, w̃_ȧ w̃) or (w_ȧ(1)e, h̃_ȧ(f)⁻¹ w̃) by the branch ρ takes.
    pub fn nu(&self, a: &AffineRoot, lift: Lift) -> Result<(XPair, Branch)> {
        let (ring, n) = (self.ring().clone(), self.n());
        let (e, info) = self.e.rho_step(a, Side::Left)?;
        let wt = match info.branch {
            Branch::K1 => w_dot(&ring, n, a, lift)?.mul(&self.wt)?,
            Branch::K2 => NTilde::from_h(h_dot(&ring, n, a, &info.coordinate)?.inverse()).mul(&self.wt)?,
            b => return internal(format!("left step reported branch {}", b.label())),
        };
        Ok((XPair { e, wt }.checked("nu")?, info.branch))
    }

    /// ν*_ḃ: (e w_ḃ(−1), w̃ w̃_ḃ⁻¹) or (e w_ḃ(−1), w̃ h̃_ḃ(g)).
    pub fn nu_star(&self, b: &AffineRoot, lift: Lift) -> Result<(XPair, Branch)> {
        let (ring, n) = (self.ring().clone(), self.n());
        let (e, info) = self.e.rho_step(b, Side::Right)?;
        let wt = match info.branch {
            Branch::K3 => self.wt.mul(&w_dot(&ring, n, b, lift)?.inverse()?)?,
            Branch::K4 => self.wt.mul(&NTilde::from_h(h_dot(&ring, n, b, &info.coordinate)?))?,
            br => return internal(format!("right step reported branch {}", br.label())),
        };
        Ok((XPair { e, wt }.checked("nu*")?, info.branch))
    }

    /// The pair x_ȧ(−f)·ψ(w̃)·x_ḃ(g), ready-made for the case analysis of ν against ν*.
    pub fn engineered(a: &AffineRoot, f: &Elem, wt: NTilde, b: &AffineRoot, g: &Elem) -> Result<XPair> {
        let (ring, n) = (wt.ring().clone(), wt.n());
        let left = crate::linear::gen_x_affine(n, a, &ring.neg(f), &ring)?;
        let right = crate::linear::gen_x_affine(n, b, g, &ring)?;
        XPair::new(Factorization::from_parts(left, wt.psi(), right)?, wt)
    }
}

/// One generator of G (acting on the left) or of G* (on the right).
#[derive(Clone, Debug)]
pub enum Generator {
    Lambda(HTilde),
    Mu(Matrix),
    Nu(AffineRoot),
}

impl Generator {
    pub fn label(&self) -> &'static str {
        match self {
            Generator::Lambda(_) => "lambda",
            Generator::Mu(_) => "mu",
            Generator::Nu(_) => "nu",
        }
    }

    pub fn left(&self, x: &XPair) -> Result<XPair> {
        match self {
            Generator::Lambda(h) => Ok(x.lambda(h)?.0),
            Generator::Mu(u) => x.mu(u),
            Generator::Nu(a) => Ok(x.nu(a, Lift::Corrected)?.0),
        }
    }

    pub fn right(&self, x: &XPair) -> Result<XPair> {
        match self {
            Generator::Lambda(h) => Ok(x.lambda_star(h)?.0),
            Generator::Mu(u) => x.mu_star(u),
            Generator::Nu(b) => Ok(x.nu_star(b, Lift::Corrected)?.0),
        }
    }
}

/// ψ(w̃) as the monomial part of a pair with trivial unipotent parts.
pub fn pair_of(wt: NTilde) -> Result<XPair> {
    let (ring, n) = (wt.ring().clone(), wt.n());
    let e = Factorization::from_parts(Matrix::identity(&ring, n), wt.psi(), Matrix::identity(&ring, n))?;
    XPair::new(e, wt)
}

/// ψ(w̃) for a check that needs no pair.
pub fn psi_of(wt: &NTilde) -> MonomialMatrix {
    wt.psi()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_rng;
    use rand::Rng;

    fn rings() -> Vec<(Ring, usize)> {
        let f9 = Ring::finite_field(3, 2, 1).unwrap();
        vec![(f9.clone(), 2), (f9, 3), (Ring::finite_field(5, 1, 0).unwrap(), 2), (Ring::hamilton(), 3)]
    }

    #[test]
    fn lifts_are_compatible_with_the_steps() {
        for (ring, n) in rings() {
            for a in (0..n).map(|idx| AffineRoot::simple(n, idx)) {
                let w1 = MonomialMatrix::w_affine(&ring, n, &a, &ring.one()).unwrap();
                assert_eq!(w_dot(&ring, n, &a, Lift::Corrected).unwrap().psi(), w1, "{a}");
                let f = ring.from_int(2);
                let h = MonomialMatrix::h_affine(&ring, n, &a, &ring.one())
                    .unwrap()
                    .mul(&MonomialMatrix::h_affine(&ring, n, &a, &f).unwrap().inv());
                assert_eq!(h_dot(&ring, n, &a, &f).unwrap().inverse().pi(), h, "{a}");
            }
        }
    }

    #[test]
    fn printed_rank_one_lifts_are_off_by_minus_one() {
        let ring = Ring::finite_field(3, 2, 1).unwrap();
        let a = AffineRoot::simple(2, 1);
        let got = w_dot(&ring, 2, &a, Lift::Printed).unwrap().psi();
        assert_eq!(got, MonomialMatrix::w_affine(&ring, 2, &a, &ring.from_int(-1)).unwrap());
    }

    #[test]
    fn random_walks_stay_in_x() {
        for (ring, n) in rings() {
            let mut rng = sample_rng(11, "walk", n as u64);
            let mut x = XPair::identity(&ring, n).unwrap();
            for _ in 0..25 {
                let a = AffineRoot::simple(n, rng.gen_range(0..n));
                x = if rng.gen_bool(0.5) { x.nu(&a, Lift::Corrected).unwrap().0 } else { x.nu_star(&a, Lift::Corrected).unwrap().0 };
                assert!(x.is_compatible());
            }
        }
    }
}
