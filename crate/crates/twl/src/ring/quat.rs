//! Quaternion algebras (a, b) over Q with basis 1, i, j, k: i^2 = a, j^2 = b, ij = -ji = k.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q4 = [BigRational; 4];

/// A structure constant, with ±1 kept symbolic so the common Hamilton case skips multiplications.
#[derive(Debug)]
enum Scale {
    One,
    MinusOne,
    Other(BigRational),
}

impl Scale {
    fn of(c: &BigRational) -> Scale {
        if c.is_one() {
            Scale::One
        } else if (-c).is_one() {
            Scale::MinusOne
        } else {
            Scale::Other(c.clone())
        }
    }

    fn apply(&self, v: BigRational) -> BigRational {
        match self {
            Scale::One => v,
            Scale::MinusOne => -v,
            Scale::Other(c) => c * v,
        }
    }
}

#[derive(Debug)]
pub(crate) struct QuatAlgebra {
    pub a: BigRational,
    pub b: BigRational,
    ab: BigRational,
    sa: Scale,
    sb: Scale,
    sab: Scale,
}

/// Linear map on the imaginary part i, j, k; column c is the image of the c-th basis vector.
#[derive(Clone, Debug)]
pub(crate) struct Rot(pub [[BigRational; 3]; 3]);

impl Rot {
    pub fn identity() -> Rot {
        let z = BigRational::zero;
        let o = BigRational::one;
        Rot([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|r| (0..3).all(|c| if r == c { self.0[r][c].is_one() } else { self.0[r][c].is_zero() }))
    }

    pub fn compose(&self, other: &Rot) -> Rot {
        let mut out = Rot::identity();
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = BigRational::zero();
                for k in 0..3 {
                    if !self.0[r][k].is_zero() && !other.0[k][c].is_zero() {
                        acc += &self.0[r][k] * &other.0[k][c];
                    }
                }
                out.0[r][c] = acc;
            }
        }
        out
    }

    /// The real part is fixed by any inner automorphism.
    pub fn apply(&self, x: &Q4) -> Q4 {
        let mut out = q4_scalar(x[0].clone());
        for r in 0..3 {
            let mut acc = BigRational::zero();
            for c in 0..3 {
                let m = &self.0[r][c];
                if m.is_zero() || x[c + 1].is_zero() {
                    continue;
                }
                if m.is_one() {
                    acc += &x[c + 1];
                } else if (-m).is_one() {
                    acc -= &x[c + 1];
                } else {
                    acc += m * &x[c + 1];
                }
            }
            out[r + 1] = acc;
        }
        out
    }
}

pub fn q4_zero() -> Q4 {
    [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()]
}

pub fn q4_scalar(c: BigRational) -> Q4 {
    [c, BigRational::zero(), BigRational::zero(), BigRational::zero()]
}

impl QuatAlgebra {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        let ab = &a * &b;
        QuatAlgebra { sa: Scale::of(&a), sb: Scale::of(&b), sab: Scale::of(&ab), a, b, ab }
    }

    /// Definite algebras are division rings; both parameters negative suffices.
    pub fn is_definite(&self) -> bool {
        self.a.is_negative() && self.b.is_negative()
    }

    pub fn add(&self, x: &Q4, y: &Q4) -> Q4 {
        [&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2], &x[3] + &y[3]]
    }

    pub fn neg(&self, x: &Q4) -> Q4 {
        [-&x[0], -&x[1], -&x[2], -&x[3]]
    }

    pub fn mul(&self, x: &Q4, y: &Q4) -> Q4 {
        let p = |i: usize, j: usize| -> BigRational {
            if x[i].is_zero() || y[j].is_zero() { BigRational::zero() } else { &x[i] * &y[j] }
        };
        [
            p(0, 0) + self.sa.apply(p(1, 1)) + self.sb.apply(p(2, 2)) - self.sab.apply(p(3, 3)),
            p(0, 1) + p(1, 0) + self.sb.apply(p(3, 2) - p(2, 3)),
            p(0, 2) + p(2, 0) + self.sa.apply(p(1, 3) - p(3, 1)),
            p(0, 3) + p(3, 0) + p(1, 2) - p(2, 1),
        ]
    }

    /// x ↦ q x q⁻¹ as a map on the imaginary part.
    pub fn conj_rot(&self, q: &Q4) -> Option<Rot> {
        let qi = self.inv(q)?;
        let mut rot = Rot::identity();
        for c in 0..3 {
            let mut e = q4_zero();
            e[c + 1] = BigRational::one();
            let img = self.mul(&self.mul(q, &e), &qi);
            for r in 0..3 {
                rot.0[r][c] = img[r + 1].clone();
            }
        }
        Some(rot)
    }

    pub fn norm(&self, x: &Q4) -> BigRational {
        &x[0] * &x[0] - &self.a * &x[1] * &x[1] - &self.b * &x[2] * &x[2] + &self.ab * &x[3] * &x[3]
    }

    /// None exactly when the reduced norm vanishes.
    pub fn inv(&self, x: &Q4) -> Option<Q4> {
        let n = self.norm(x);
        if n.is_zero() {
            return None;
        }
        Some([&x[0] / &n, -&x[1] / &n, -&x[2] / &n, -&x[3] / &n])
    }

    pub fn is_one(x: &Q4) -> bool {
        x[0].is_one() && x[1].is_zero() && x[2].is_zero() && x[3].is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn q(a: i64, b: i64, c: i64, d: i64) -> Q4 {
        [r(a), r(b), r(c), r(d)]
    }

    #[test]
    fn hamilton_relations() {
        let h = QuatAlgebra::new(r(-1), r(-1));
        let (i, j, k) = (q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1));
        assert_eq!(h.mul(&i, &i), q(-1, 0, 0, 0));
        assert_eq!(h.mul(&j, &j), q(-1, 0, 0, 0));
        assert_eq!(h.mul(&k, &k), q(-1, 0, 0, 0));
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&j, &i), h.neg(&k));
    }

    #[test]
    fn general_parameters_satisfy_defining_relations() {
        let h = QuatAlgebra::new(r(-2), r(-3));
        let (i, j, k) = (q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1));
        assert_eq!(h.mul(&i, &i), q(-2, 0, 0, 0));
        assert_eq!(h.mul(&j, &j), q(-3, 0, 0, 0));
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&k, &k), q(-6, 0, 0, 0));
        let x = q(1, 2, -1, 3);
        assert!(QuatAlgebra::is_one(&h.mul(&x, &h.inv(&x).unwrap())));
        assert!(QuatAlgebra::is_one(&h.mul(&h.inv(&x).unwrap(), &x)));
    }

    #[test]
    fn indefinite_algebra_has_zero_divisors() {
        let h = QuatAlgebra::new(r(1), r(-1));
        assert!(!h.is_definite());
        assert!(h.inv(&q(1, 1, 0, 0)).is_none());
    }
}
