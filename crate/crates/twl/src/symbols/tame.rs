//! The tame symbol on F_q[t, t⁻¹]: {a t^m, b t^n} = (−1)^{mn} a^n b^{−m}.

use std::fmt;

use crate::error::{Result, TwlError};
use crate::ring::{Elem, Ring, Unit};

/// An element of F_q^×, the target of the tame symbol.
#[derive(Clone, PartialEq, Eq)]
pub struct TameValue {
    ring: Ring,
    value: Elem,
}

impl fmt::Debug for TameValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TameValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.show(&self.value))
    }
}

impl TameValue {
    pub fn one(ring: &Ring) -> TameValue {
        TameValue { ring: ring.clone(), value: ring.one() }
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }

    pub fn mul(&self, other: &TameValue) -> TameValue {
        TameValue { ring: self.ring.clone(), value: self.ring.mul(&self.value, &other.value) }
    }

    pub fn inv(&self) -> TameValue {
        TameValue { ring: self.ring.clone(), value: self.ring.inv(&self.value).expect("nonzero") }
    }

    pub fn pow(&self, e: i64) -> TameValue {
        TameValue { ring: self.ring.clone(), value: self.ring.pow(&self.value, e).expect("nonzero") }
    }
}

pub fn require_tame(ring: &Ring) -> Result<()> {
    if ring.is_commutative_untwisted() {
        Ok(())
    } else {
        Err(TwlError::Unsupported(format!("the tame symbol needs a commutative untwisted ring, not {}", ring.describe())))
    }
}

pub fn tame_symbol(u: &Unit, v: &Unit) -> Result<TameValue> {
    let ring = u.ring();
    require_tame(ring)?;
    let (m, n) = (u.deg(), v.deg());
    let mut value = ring.mul(&ring.pow(u.coeff(), n)?, &ring.pow(v.coeff(), -m)?);
    if (m * n).rem_euclid(2) == 1 {
        value = ring.neg(&value);
    }
    Ok(TameValue { ring: ring.clone(), value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(r: &Ring, a: i64, m: i64) -> Unit {
        Unit::new(r, r.from_int(a), m).unwrap()
    }

    #[test]
    fn f5_examples() {
        let r = Ring::finite_field(5, 1, 0).unwrap();
        assert_eq!(tame_symbol(&unit(&r, 1, 1), &unit(&r, 2, 0)).unwrap().value(), &r.from_int(3));
        assert_eq!(tame_symbol(&unit(&r, 1, 1), &unit(&r, 1, 1)).unwrap().value(), &r.from_int(4));
        assert!(tame_symbol(&unit(&r, 2, 0), &unit(&r, 3, 0)).unwrap().is_one());
    }

    #[test]
    fn steinberg_property_exhaustive() {
        for (p, k) in [(5, 1), (7, 1), (2, 2), (3, 2), (5, 2)] {
            let r = Ring::finite_field(p, k, 0).unwrap();
            for a in r.elements().unwrap() {
                if r.is_zero(&a) || r.is_one(&a) {
                    continue;
                }
                let s = Unit::scalar(&r, a.clone()).unwrap();
                let one_minus = Unit::scalar(&r, r.sub(&r.one(), &a)).unwrap();
                assert!(tame_symbol(&s, &one_minus).unwrap().is_one());
            }
        }
    }

    #[test]
    fn twisted_ring_is_unsupported() {
        let r = Ring::finite_field(3, 2, 1).unwrap();
        let u = Unit::one(&r);
        assert!(matches!(tame_symbol(&u, &u), Err(TwlError::Unsupported(_))));
    }
}
