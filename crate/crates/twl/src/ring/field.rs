//! Finite fields F_q, q = p^k, as base-p digit vectors over a primitive modulus.

use crate::error::{Result, TwlError};

/// Largest field order with precomputed tables.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug)]
pub(crate) struct FieldTables {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Coefficients a_0..a_{k-1} of the monic modulus X^k + sum a_i X^i.
    pub modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// frob[e][x] = x^(p^e), e in 0..k.
    frob: Vec<Vec<u32>>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// x * X modulo the monic modulus, in digit form.
fn times_x(ds: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = ds.len();
    let top = ds[k - 1];
    let mut out = vec![0; k];
    for i in (1..k).rev() {
        out[i] = ds[i - 1];
    }
    for i in 0..k {
        out[i] = (out[i] + (p - (top * modulus[i]) % p)) % p;
    }
    out
}

/// Powers of X for the candidate modulus, or None if X is not primitive.
fn power_table(modulus: &[u32], p: u32, q: u32) -> Option<Vec<u32>> {
    let k = modulus.len() as u32;
    let mut cur = digits(1, p, k);
    let mut exp = Vec::with_capacity((q - 1) as usize);
    for i in 0..q - 1 {
        let v = undigits(&cur, p);
        if v == 0 || (i > 0 && v == 1) {
            return None;
        }
        exp.push(v);
        cur = times_x(&cur, modulus, p);
    }
    (undigits(&cur, p) == 1).then_some(exp)
}

impl FieldTables {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(TwlError::Config(format!("p = {p} is not prime")));
        }
        if k == 0 {
            return Err(TwlError::Config("extension degree k must be positive".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER as u64).ok_or_else(|| {
            TwlError::Config(format!("field order {p}^{k} exceeds {MAX_ORDER}"))
        })? as u32;
        // Smallest primitive monic modulus in the base-p ordering of its lower coefficients.
        let (modulus, exp) = (0..q)
            .find_map(|c| {
                let m = digits(c, p, k);
                power_table(&m, p, q).map(|e| (m, e))
            })
            .ok_or_else(|| TwlError::Internal(format!("no primitive modulus for F_{q}")))?;
        let mut log = vec![0; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let mut t = FieldTables { p, k, q, modulus, exp, log, frob: Vec::new() };
        let ident: Vec<u32> = (0..q).collect();
        let frob1: Vec<u32> = (0..q).map(|x| t.pow(x, p as i64)).collect();
        let mut frob = vec![ident];
        for e in 1..k as usize {
            let next = frob[e - 1].iter().map(|&x| frob1[x as usize]).collect();
            frob.push(next);
        }
        t.frob = frob;
        Ok(t)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.k == 1 {
            return (x + y) % self.p;
        }
        if self.p == 2 {
            return x ^ y;
        }
        let (p, mut x, mut y) = (self.p, x, y);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.p == 2 {
            return x;
        }
        let (p, mut x) = (self.p, x);
        let (mut out, mut place) = (0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        out
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[x as usize] + self.log[y as usize]) % n) as usize]
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, x: u32) -> u32 {
        debug_assert!(x != 0);
        let n = self.q - 1;
        self.exp[((n - self.log[x as usize]) % n) as usize]
    }

    pub fn pow(&self, x: u32, e: i64) -> u32 {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[x as usize] as i64 * e).rem_euclid(n);
        self.exp[l as usize]
    }

    /// x^(p^e) for any integer e.
    pub fn frobenius(&self, x: u32, e: i64) -> u32 {
        self.frob[e.rem_euclid(self.k as i64) as usize][x as usize]
    }

    /// The class of X, written `g` in literals.
    pub fn generator(&self) -> u32 {
        if self.k == 1 {
            (self.p - self.modulus[0] % self.p) % self.p
        } else {
            self.p
        }
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn digit_vec(&self, x: u32) -> Vec<u32> {
        digits(x, self.p, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_modulus_is_x2_x_1() {
        let f = FieldTables::new(2, 2).unwrap();
        assert_eq!(f.modulus, vec![1, 1]);
        let w = f.generator();
        // w^2 = w + 1
        assert_eq!(f.mul(w, w), f.add(w, 1));
    }

    #[test]
    fn prime_field_matches_integer_arithmetic() {
        let f = FieldTables::new(7, 1).unwrap();
        for x in 0..7u32 {
            for y in 0..7u32 {
                assert_eq!(f.add(x, y), (x + y) % 7);
                assert_eq!(f.mul(x, y), (x * y) % 7);
            }
            if x != 0 {
                assert_eq!(f.mul(x, f.inv(x)), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_periodic() {
        let f = FieldTables::new(3, 2).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(f.frobenius(f.add(x, y), 1), f.add(f.frobenius(x, 1), f.frobenius(y, 1)));
                assert_eq!(f.frobenius(f.mul(x, y), 1), f.mul(f.frobenius(x, 1), f.frobenius(y, 1)));
            }
            assert_eq!(f.frobenius(x, 2), x);
            assert_eq!(f.frobenius(f.frobenius(x, 1), -1), x);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldTables::new(4, 1).is_err());
        assert!(FieldTables::new(2, 0).is_err());
        assert!(FieldTables::new(2, 17).is_err());
    }
}
