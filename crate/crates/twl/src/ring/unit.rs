use std::fmt;

use rand::Rng;

use super::{Elem, Poly, Ring};
use crate::error::{Result, TwlError};

/// A unit s t^k of D_τ, s ≠ 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Unit {
    ring: Ring,
    s: Elem,
    k: i64,
}

impl fmt::Debug for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl Unit {
    pub fn new(ring: &Ring, s: Elem, k: i64) -> Result<Unit> {
        if ring.is_zero(&s) {
            return Err(TwlError::Domain("a unit needs a nonzero coefficient".into()));
        }
        Ok(Unit { ring: ring.clone(), s, k })
    }

    pub fn scalar(ring: &Ring, s: Elem) -> Result<Unit> {
        Unit::new(ring, s, 0)
    }

    pub fn one(ring: &Ring) -> Unit {
        Unit { ring: ring.clone(), s: ring.one(), k: 0 }
    }

    pub fn minus_one(ring: &Ring) -> Unit {
        Unit { ring: ring.clone(), s: ring.from_int(-1), k: 0 }
    }

    pub fn t_pow(ring: &Ring, k: i64) -> Unit {
        Unit { ring: ring.clone(), s: ring.one(), k }
    }

    pub fn from_int(ring: &Ring, n: i64) -> Result<Unit> {
        Unit::scalar(ring, ring.from_int(n))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeff(&self) -> &Elem {
        &self.s
    }

    pub fn deg(&self) -> i64 {
        self.k
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.ring.is_one(&self.s)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::monomial(&self.ring, self.s.clone(), self.k)
    }

    pub fn mul(&self, other: &Unit) -> Unit {
        let r = &self.ring;
        Unit { ring: r.clone(), s: r.mul(&self.s, &r.tau_pow(&other.s, self.k)), k: self.k + other.k }
    }

    /// (s t^k)⁻¹ = τ^{-k}(s⁻¹) t^{-k}.
    pub fn inv(&self) -> Unit {
        let r = &self.ring;
        let si = r.inv(&self.s).expect("unit coefficient is nonzero");
        Unit { ring: r.clone(), s: r.tau_pow(&si, -self.k), k: -self.k }
    }

    pub fn neg(&self) -> Unit {
        Unit { ring: self.ring.clone(), s: self.ring.neg(&self.s), k: self.k }
    }

    pub fn pow(&self, e: i64) -> Unit {
        let base = if e < 0 { self.inv() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Unit::one(&self.ring), |acc, _| acc.mul(&base))
    }

    /// [u, v] = u v u⁻¹ v⁻¹.
    pub fn comm(&self, other: &Unit) -> Unit {
        self.mul(other).mul(&self.inv()).mul(&other.inv())
    }

    /// ^u v = u v u⁻¹.
    pub fn conj(&self, v: &Unit) -> Unit {
        self.mul(v).mul(&self.inv())
    }

    /// τ^j applied to the coefficient, i.e. conjugation by t^j.
    pub fn tau_apply(&self, j: i64) -> Unit {
        Unit { ring: self.ring.clone(), s: self.ring.tau_pow(&self.s, j), k: self.k }
    }

    pub fn random<R: Rng + ?Sized>(ring: &Ring, rng: &mut R, degree_cap: i64) -> Unit {
        let k = if degree_cap > 0 { rng.gen_range(-degree_cap..=degree_cap) } else { 0 };
        Unit { ring: ring.clone(), s: ring.random_nonzero(rng), k }
    }
}
