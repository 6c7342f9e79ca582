//! Matrices over D_τ, the generators x, w, h, monomial matrices and the U/B membership tests.

pub mod audit;
mod word;

use std::fmt;

use crate::error::{Result, TwlError};
use crate::ring::{Elem, Poly, Ring, Unit};
use crate::roots::{AffineRoot, FiniteRoot};

pub use word::{GroupWord, Kind, Letter};
pub(crate) use word::index_pair;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    n: usize,
    e: Vec<Poly>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|r| (0..self.n).map(|c| self.e[r * self.n + c].to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Matrix {
    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut e = vec![Poly::zero(ring); n * n];
        for i in 0..n {
            e[i * n + i] = Poly::one(ring);
        }
        Matrix { ring: ring.clone(), n, e }
    }

    pub fn zero(ring: &Ring, n: usize) -> Matrix {
        Matrix { ring: ring.clone(), n, e: vec![Poly::zero(ring); n * n] }
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Poly>>) -> Matrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { ring: ring.clone(), n, e: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Entry (i, j), 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.e[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.e[(i - 1) * self.n + (j - 1)] = p;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let mut out = Matrix::zero(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.e[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.e[k * n + j];
                    if !b.is_zero() {
                        out.e[i * n + j] = &out.e[i * n + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// self ← x_ij(g)·self, i.e. row_i += g·row_j.
    pub fn left_x(&mut self, i: usize, j: usize, g: &Poly) {
        let n = self.n;
        for c in 0..n {
            let add = g * &self.e[(j - 1) * n + c];
            let slot = &mut self.e[(i - 1) * n + c];
            *slot = &*slot + &add;
        }
    }

    /// self ← self·x_ij(g), i.e. col_j += col_i·g.
    pub fn right_x(&mut self, i: usize, j: usize, g: &Poly) {
        let n = self.n;
        for r in 0..n {
            let add = &self.e[r * n + (i - 1)] * g;
            let slot = &mut self.e[r * n + (j - 1)];
            *slot = &*slot + &add;
        }
    }

    /// self·P_σ diag(u): column c becomes column σ(c) of self times u_c.
    pub fn mul_monomial(&self, w: &MonomialMatrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(&self.ring, n);
        for c in 0..n {
            let src = w.sigma[c];
            let u = w.units[c].to_poly();
            for r in 0..n {
                let a = &self.e[r * n + src];
                if !a.is_zero() {
                    out.e[r * n + c] = a * &u;
                }
            }
        }
        out
    }

    /// w·self·w⁻¹: entry (a, b) moves to (σa, σb) as u_a X_ab u_b⁻¹.
    pub fn conj_by(&self, w: &MonomialMatrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(&self.ring, n);
        let inv: Vec<Poly> = w.units.iter().map(|u| u.inv().to_poly()).collect();
        for a in 0..n {
            let ua = w.units[a].to_poly();
            for b in 0..n {
                let x = &self.e[a * n + b];
                if !x.is_zero() {
                    out.e[w.sigma[a] * n + w.sigma[b]] = &(&ua * x) * &inv[b];
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| {
            (0..self.n).all(|c| {
                let p = &self.e[r * self.n + c];
                if r == c { p.is_one() } else { p.is_zero() }
            })
        })
    }

    /// Splits a monomial matrix into P_σ·diag(u_1, …, u_n).
    pub fn monomial_parts(&self) -> Result<MonomialMatrix> {
        let n = self.n;
        let mut sigma = vec![usize::MAX; n];
        let mut units = Vec::with_capacity(n);
        for c in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&r| !self.e[r * n + c].is_zero()).collect();
            if nz.len() != 1 {
                return Err(TwlError::Domain(format!("column {} is not monomial", c + 1)));
            }
            let r = nz[0];
            let u = self.e[r * n + c]
                .as_unit()
                .ok_or_else(|| TwlError::Domain(format!("entry ({}, {}) is not a unit", r + 1, c + 1)))?;
            sigma[c] = r;
            units.push(u);
        }
        let mut seen = vec![false; n];
        for &r in &sigma {
            if std::mem::replace(&mut seen[r], true) {
                return Err(TwlError::Domain("two nonzero entries share a row".into()));
            }
        }
        Ok(MonomialMatrix { n, sigma, units })
    }

    /// Nonnegative t-exponents and upper unitriangular modulo t.
    pub fn in_u(&self) -> bool {
        self.unipotent_mod_t(true)
    }

    /// Nonnegative t-exponents and upper triangular modulo t with invertible diagonal.
    pub fn in_b(&self) -> bool {
        self.unipotent_mod_t(false)
    }

    fn unipotent_mod_t(&self, unitriangular: bool) -> bool {
        let n = self.n;
        for r in 0..n {
            for c in 0..n {
                let p = &self.e[r * n + c];
                if p.min_exp().is_some_and(|m| m < 0) {
                    return false;
                }
                let c0 = p.coeff(0);
                if r > c && !self.ring.is_zero(&c0) {
                    return false;
                }
                if r == c {
                    if unitriangular && !self.ring.is_one(&c0) {
                        return false;
                    }
                    if self.ring.is_zero(&c0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// x_β̇(f) payload: f t^m for β > 0, t^m f for β < 0 (stored left-normal).
pub fn affine_poly(beta: &AffineRoot, c: &Elem, ring: &Ring) -> Poly {
    if beta.root.is_positive() {
        Poly::monomial(ring, c.clone(), beta.m)
    } else {
        Poly::monomial_right(ring, c, beta.m)
    }
}

pub fn affine_unit(beta: &AffineRoot, c: &Elem, ring: &Ring) -> Result<Unit> {
    affine_poly(beta, c, ring)
        .as_unit()
        .ok_or_else(|| TwlError::Domain("w and h payloads must be nonzero".into()))
}

/// Recovers the D-coefficient of a single-term payload at the level of β̇.
pub fn affine_coeff(root: &FiniteRoot, payload: &Poly) -> Option<(i64, Elem)> {
    let u = payload.as_unit()?;
    let m = u.deg();
    Some(if root.is_positive() { (m, u.coeff().clone()) } else { (m, payload.right_coeff(m)) })
}

pub fn gen_x(n: usize, i: usize, j: usize, g: &Poly) -> Result<Matrix> {
    Letter::x(i, j, g.clone())?.matrix(n)
}

pub fn gen_x_affine(n: usize, beta: &AffineRoot, c: &Elem, ring: &Ring) -> Result<Matrix> {
    Letter::xa(beta, c, ring)?.matrix(n)
}

pub fn gen_w(n: usize, i: usize, j: usize, u: &Unit) -> Result<Matrix> {
    Letter::w(i, j, u)?.matrix(n)
}

pub fn gen_h(n: usize, i: usize, j: usize, u: &Unit) -> Result<Matrix> {
    Letter::h(i, j, u)?.matrix(n)
}

/// P_σ·diag(u_1, …, u_n): column i carries u_i in row σ(i). Indices stored 0-based.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    n: usize,
    sigma: Vec<usize>,
    units: Vec<Unit>,
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sigma.iter().map(|r| (r + 1).to_string()).collect();
        let u: Vec<String> = self.units.iter().map(|u| u.to_string()).collect();
        write!(f, "sigma=[{}]; units=({})", s.join(","), u.join(", "))
    }
}

/// w(β̇) and the coefficient g with w x_β̇(f) w⁻¹ = x_{w(β̇)}(g).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationResult {
    pub root: AffineRoot,
    pub coeff: Elem,
}

impl MonomialMatrix {
    pub fn new(sigma: Vec<usize>, units: Vec<Unit>) -> Result<MonomialMatrix> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(TwlError::Domain("sigma is not a permutation".into()));
            }
        }
        if units.len() != n {
            return Err(TwlError::Domain("need one unit per column".into()));
        }
        Ok(MonomialMatrix { n, sigma, units })
    }

    pub fn identity(ring: &Ring, n: usize) -> MonomialMatrix {
        MonomialMatrix { n, sigma: (0..n).collect(), units: vec![Unit::one(ring); n] }
    }

    pub fn diag(units: Vec<Unit>) -> MonomialMatrix {
        MonomialMatrix { n: units.len(), sigma: (0..units.len()).collect(), units }
    }

    /// w_ij(u) = x_ij(u) x_ji(−u⁻¹) x_ij(u).
    pub fn w(ring: &Ring, n: usize, i: usize, j: usize, u: &Unit) -> MonomialMatrix {
        let mut m = MonomialMatrix::identity(ring, n);
        m.sigma.swap(i - 1, j - 1);
        m.units[i - 1] = u.inv().neg();
        m.units[j - 1] = u.clone();
        m
    }

    /// h_ij(u) = w_ij(u) w_ij(−1) = diag(…, u at i, …, u⁻¹ at j, …).
    pub fn h(ring: &Ring, n: usize, i: usize, j: usize, u: &Unit) -> MonomialMatrix {
        let mut m = MonomialMatrix::identity(ring, n);
        m.units[i - 1] = u.clone();
        m.units[j - 1] = u.inv();
        m
    }

    pub fn w_affine(ring: &Ring, n: usize, beta: &AffineRoot, c: &Elem) -> Result<MonomialMatrix> {
        Ok(MonomialMatrix::w(ring, n, beta.root.i, beta.root.j, &affine_unit(beta, c, ring)?))
    }

    /// Diagonal with a at i and b at j, 1 elsewhere.
    pub fn diag_pair(ring: &Ring, n: usize, i: usize, j: usize, a: &Unit, b: &Unit) -> MonomialMatrix {
        let mut m = MonomialMatrix::identity(ring, n);
        m.units[i - 1] = a.clone();
        m.units[j - 1] = b.clone();
        m
    }

    pub fn h_affine(ring: &Ring, n: usize, beta: &AffineRoot, c: &Elem) -> Result<MonomialMatrix> {
        Ok(MonomialMatrix::h(ring, n, beta.root.i, beta.root.j, &affine_unit(beta, c, ring)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        self.units[0].ring()
    }

    /// σ as a 1-based image list.
    pub fn sigma(&self) -> Vec<usize> {
        self.sigma.iter().map(|s| s + 1).collect()
    }

    pub fn sigma_of(&self, i: usize) -> usize {
        self.sigma[i - 1] + 1
    }

    pub fn sigma_inv_of(&self, r: usize) -> usize {
        self.sigma.iter().position(|&s| s == r - 1).unwrap() + 1
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    /// u_i, 1-based.
    pub fn unit(&self, i: usize) -> &Unit {
        &self.units[i - 1]
    }

    pub fn is_diagonal(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Diagonal with every unit of degree zero.
    pub fn in_t0(&self) -> bool {
        self.is_diagonal() && self.units.iter().all(|u| u.deg() == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.units.iter().all(|u| u.is_one())
    }

    pub fn to_matrix(&self) -> Matrix {
        let ring = self.ring();
        let mut m = Matrix::zero(ring, self.n);
        for (c, u) in self.units.iter().enumerate() {
            m.set(self.sigma[c] + 1, c + 1, u.to_poly());
        }
        m
    }

    /// (P_σ D_u)(P_π D_v): column i lands in row σπ(i) with u_{π(i)} v_i.
    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let sigma = (0..self.n).map(|i| self.sigma[other.sigma[i]]).collect();
        let units = (0..self.n).map(|i| self.units[other.sigma[i]].mul(&other.units[i])).collect();
        MonomialMatrix { n: self.n, sigma, units }
    }

    pub fn inv(&self) -> MonomialMatrix {
        let mut sigma = vec![0; self.n];
        let mut units = self.units.clone();
        for i in 0..self.n {
            sigma[self.sigma[i]] = i;
            units[self.sigma[i]] = self.units[i].inv();
        }
        MonomialMatrix { n: self.n, sigma, units }
    }

    /// w E_ij(F) w⁻¹ = E_{σi,σj}(u_i F u_j⁻¹).
    pub fn conj_entry(&self, i: usize, j: usize, f: &Poly) -> (usize, usize, Poly) {
        let g = &(&self.unit(i).to_poly() * f) * &self.unit(j).inv().to_poly();
        (self.sigma_of(i), self.sigma_of(j), g)
    }

    /// w(β̇): root (σi, σj) at level m + deg(u_i) − deg(u_j).
    pub fn act_root(&self, beta: &AffineRoot) -> AffineRoot {
        let (i, j) = (beta.root.i, beta.root.j);
        AffineRoot {
            root: FiniteRoot { i: self.sigma_of(i), j: self.sigma_of(j) },
            m: beta.m + self.unit(i).deg() - self.unit(j).deg(),
        }
    }

    /// w^{sign} x_β̇(f) w^{−sign} = x_γ̇(g).
    pub fn conj_x(&self, beta: &AffineRoot, f: &Elem, sign: i32) -> ConjugationResult {
        let w = if sign >= 0 { self.clone() } else { self.inv() };
        let ring = self.ring();
        let root = w.act_root(beta);
        let (_, _, g) = w.conj_entry(beta.root.i, beta.root.j, &affine_poly(beta, f, ring));
        let coeff = if g.is_zero() {
            ring.zero()
        } else {
            let (m, c) = affine_coeff(&root.root, &g).expect("conjugate of a monomial is a monomial");
            debug_assert_eq!(m, root.m);
            c
        };
        ConjugationResult { root, coeff }
    }
}

pub fn conj_by_monomial(w: &MonomialMatrix, beta: &AffineRoot, f: &Elem, sign: i32) -> ConjugationResult {
    w.conj_x(beta, f, sign)
}

pub fn monomial_parts(m: &Matrix) -> Result<MonomialMatrix> {
    m.monomial_parts()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::literal::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> Ring {
        Ring::finite_field(2, 2, 1).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn generator_matrices_n2() {
        let r = Ring::finite_field(3, 2, 1).unwrap();
        let u = Unit::new(&r, r.generator().unwrap(), 1).unwrap();
        let w = gen_w(2, 1, 2, &u).unwrap();
        let expect = Matrix::from_rows(&r, vec![
            vec![Poly::zero(&r), u.to_poly()],
            vec![-u.inv().to_poly(), Poly::zero(&r)],
        ]);
        assert_eq!(w, expect);
        assert_eq!(gen_h(2, 1, 2, &u).unwrap(), MonomialMatrix::diag(vec![u.clone(), u.inv()]).to_matrix());
        assert!(gen_h(3, 1, 3, &Unit::one(&r)).unwrap().is_identity());
        assert_eq!(w.mul(&gen_w(2, 1, 2, &u.neg()).unwrap()), Matrix::identity(&r, 2));
        let parts = w.monomial_parts().unwrap();
        assert_eq!(parts.sigma(), vec![2, 1]);
        assert_eq!(parts.units(), &[u.inv().neg(), u.clone()]);
        assert_eq!(parts, MonomialMatrix::w(&r, 2, 1, 2, &u));
    }

    #[test]
    fn affine_x_sidedness() {
        let r = f4();
        let w = r.generator().unwrap();
        let beta = AffineRoot::new(2, 1, 1).unwrap();
        let m = gen_x_affine(2, &beta, &w, &r).unwrap();
        assert_eq!(m.get(2, 1), &p(&r, "t*g"));
        assert_eq!(m.get(2, 1), &Poly::monomial(&r, r.tau_pow(&w, 1), 1));
        assert!(gen_x_affine(2, &AffineRoot::new(1, 2, 0).unwrap(), &r.zero(), &r).unwrap().is_identity());
        assert!(gen_x(2, 1, 1, &Poly::one(&r)).is_err());
    }

    #[test]
    fn membership_examples() {
        let r = f4();
        let g = r.generator().unwrap();
        assert!(gen_x_affine(3, &AffineRoot::new(1, 2, 0).unwrap(), &g, &r).unwrap().in_u());
        assert!(gen_x_affine(3, &AffineRoot::new(2, 1, 1).unwrap(), &g, &r).unwrap().in_u());
        assert!(!gen_x_affine(3, &AffineRoot::new(2, 1, 0).unwrap(), &g, &r).unwrap().in_u());
        assert!(!gen_w(2, 1, 2, &Unit::one(&r)).unwrap().in_u());
        let d = MonomialMatrix::diag(vec![Unit::scalar(&r, g.clone()).unwrap(), Unit::one(&r)]).to_matrix();
        assert!(d.in_b() && !d.in_u());
        let dt = MonomialMatrix::diag(vec![Unit::t_pow(&r, 1), Unit::t_pow(&r, -1)]).to_matrix();
        assert!(!dt.in_b());
    }

    #[test]
    fn monomial_parts_rejects_non_monomials() {
        let r = f4();
        assert!(gen_x(2, 1, 2, &Poly::one(&r)).unwrap().monomial_parts().is_err());
        let m = Matrix::from_rows(&r, vec![vec![p(&r, "1+t^1"), Poly::zero(&r)], vec![Poly::zero(&r), Poly::one(&r)]]);
        assert!(m.monomial_parts().is_err());
        let d = Matrix::from_rows(&r, vec![vec![p(&r, "t^1"), Poly::zero(&r)], vec![Poly::zero(&r), Poly::one(&r)]]);
        let parts = d.monomial_parts().unwrap();
        assert_eq!(parts.units()[0].deg(), 1);
        assert!(parts.is_diagonal());
    }

    #[test]
    fn monomial_product_and_inverse_match_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for ring in [f4(), Ring::hamilton()] {
            for n in 2..=4 {
                for _ in 0..40 {
                    let a = random_monomial(&ring, n, &mut rng);
                    let b = random_monomial(&ring, n, &mut rng);
                    assert_eq!(a.mul(&b).to_matrix(), a.to_matrix().mul(&b.to_matrix()));
                    assert!(a.mul(&a.inv()).is_identity());
                    assert_eq!(a.to_matrix().monomial_parts().unwrap(), a);
                }
            }
        }
    }

    pub(crate) fn random_monomial(ring: &Ring, n: usize, rng: &mut ChaCha8Rng) -> MonomialMatrix {
        let mut sigma: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            sigma.swap(i, rng.gen_range(0..=i));
        }
        let units = (0..n).map(|_| Unit::random(ring, rng, 2)).collect();
        MonomialMatrix::new(sigma, units).unwrap()
    }

    #[test]
    fn conj_by_monomial_matches_matrix_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for ring in [f4(), Ring::finite_field(3, 2, 1).unwrap(), Ring::hamilton()] {
            for n in 2..=4 {
                for _ in 0..60 {
                    let w = random_monomial(&ring, n, &mut rng);
                    let i = rng.gen_range(1..=n);
                    let j = loop {
                        let j = rng.gen_range(1..=n);
                        if j != i {
                            break j;
                        }
                    };
                    let beta = AffineRoot::new(i, j, rng.gen_range(-3..=3)).unwrap();
                    let f = ring.random_elem(&mut rng);
                    for sign in [1, -1] {
                        let res = conj_by_monomial(&w, &beta, &f, sign);
                        let (a, b) = if sign > 0 { (w.clone(), w.inv()) } else { (w.inv(), w.clone()) };
                        let direct = a.to_matrix().mul(&gen_x_affine(n, &beta, &f, &ring).unwrap()).mul(&b.to_matrix());
                        assert_eq!(gen_x_affine(n, &res.root, &res.coeff, &ring).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn conj_examples() {
        let r = f4();
        let g = r.generator().unwrap();
        let id = MonomialMatrix::identity(&r, 2);
        let beta = AffineRoot::new(1, 2, 0).unwrap();
        assert_eq!(conj_by_monomial(&id, &beta, &g, 1), ConjugationResult { root: beta, coeff: g.clone() });
        let d = MonomialMatrix::diag(vec![Unit::t_pow(&r, 1), Unit::one(&r)]);
        let res = conj_by_monomial(&d, &beta, &g, 1);
        assert_eq!(res.root, AffineRoot::new(1, 2, 1).unwrap());
        assert_eq!(res.coeff, r.tau_pow(&g, 1));
        let cyc = MonomialMatrix::new(vec![1, 2, 0], vec![Unit::one(&r); 3]).unwrap();
        let res = conj_by_monomial(&cyc, &AffineRoot::new(1, 2, 2).unwrap(), &g, 1);
        assert_eq!(res.root, AffineRoot::new(2, 3, 2).unwrap());
        assert_eq!(res.coeff, g);
    }

    #[test]
    fn conj_by_matches_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let ring = Ring::hamilton();
        for n in 2..=4 {
            let w = random_monomial(&ring, n, &mut rng);
            let x = Letter::x(1, 2, Poly::monomial(&ring, ring.random_nonzero(&mut rng), 2)).unwrap().matrix(n).unwrap();
            let y = x.mul(&gen_x(n, 2, 1, &Poly::t_pow(&ring, 1)).unwrap());
            assert_eq!(y.conj_by(&w), w.to_matrix().mul(&y).mul(&w.inv().to_matrix()));
            assert_eq!(y.mul_monomial(&w), y.mul(&w.to_matrix()));
        }
    }
}
