use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Elem, Ring, Unit};
use crate::error::{Result, TwlError};

/// Σ c_m t^m in left-normal form; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<i64, Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::literal::show_poly(self))
    }
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, ring.one())
    }

    pub fn constant(ring: &Ring, c: Elem) -> Poly {
        Poly::monomial(ring, c, 0)
    }

    /// c t^m.
    pub fn monomial(ring: &Ring, c: Elem, m: i64) -> Poly {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    /// t^m c, converted to left-normal form τ^m(c) t^m.
    pub fn monomial_right(ring: &Ring, c: &Elem, m: i64) -> Poly {
        Poly::monomial(ring, ring.tau_pow(c, m), m)
    }

    pub fn t_pow(ring: &Ring, m: i64) -> Poly {
        Poly::monomial(ring, ring.one(), m)
    }

    pub fn from_int(ring: &Ring, n: i64) -> Poly {
        Poly::constant(ring, ring.from_int(n))
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (i64, Elem)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| self.ring.is_one(c))
    }

    /// (exponent, left coefficient) pairs in ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Elem)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Left coefficient of t^m.
    pub fn coeff(&self, m: i64) -> Elem {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Coefficient c with the t^m term written as t^m c.
    pub fn right_coeff(&self, m: i64) -> Elem {
        self.ring.tau_pow(&self.coeff(m), -m)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, m: i64, c: &Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => self.ring.add(old, c),
            None => c.clone(),
        };
        if self.ring.is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert!(self.ring == other.ring, "mismatched coefficient rings");
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        if self.ring != other.ring {
            return Err(TwlError::Config("mismatched ring specs in product".into()));
        }
        Ok(self * other)
    }

    /// The unit s t^k if this polynomial is a single term.
    pub fn as_unit(&self) -> Option<Unit> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some(Unit::new(&self.ring, c.clone(), *m).expect("stored coefficients are nonzero"))
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Applies τ^j coefficientwise; this is conjugation by t^j.
    pub fn tau_apply(&self, j: i64) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, self.ring.tau_pow(c, j))).collect(),
        }
    }

    pub fn scale_left(&self, c: &Elem) -> Poly {
        Poly::constant(&self.ring, c.clone()) * self
    }

    /// Only the terms with exponent in [lo, hi].
    pub fn truncate(&self, lo: i64, hi: i64) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.range(lo..=hi).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Splits into single-term pieces in ascending exponent.
    pub fn monomials(&self) -> Vec<Poly> {
        self.terms.iter().map(|(m, c)| Poly::monomial(&self.ring, c.clone(), *m)).collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, self.ring.neg(c))).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let r = &self.ring;
        let mut out = Poly::zero(r);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                // (a t^m)(b t^n) = a τ^m(b) t^{m+n}
                out.add_term(m + n, &r.mul(a, &r.tau_pow(b, *m)));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
