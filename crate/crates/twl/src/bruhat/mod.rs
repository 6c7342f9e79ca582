//! UNU factorization of elementary-group words and the monomial projection ρ.
//!
//! A factorization stores u, v ∈ U as matrices and w as a monomial matrix; words for
//! u and v are read back from the matrices on demand. Letters are first rewritten into
//! x_ȧ(c) with ȧ positive and w_ȧ(±1) with ȧ simple, then absorbed one at a time.

pub mod audit;
pub mod uword;

use std::fmt;

use crate::error::{internal, Result, TwlError};
use crate::linear::{affine_coeff, affine_poly, affine_unit, GroupWord, Kind, Letter, Matrix, MonomialMatrix};
use crate::ring::{Elem, Poly, Ring, Unit};
use crate::roots::{reduce_to_simple, AffineRoot};

pub use uword::u_word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Which update rule a step used. K1/K2 are left steps, K3/K4 right steps; K2 and K4
/// are the cases where the coordinate is nonzero and w moves ȧ to a negative root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    K1,
    K2,
    K3,
    K4,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::K1 => "k1",
            Branch::K2 => "k2",
            Branch::K3 => "k3",
            Branch::K4 => "k4",
        }
    }

    pub fn reduces(self) -> bool {
        matches!(self, Branch::K2 | Branch::K4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepInfo {
    pub root: AffineRoot,
    pub side: Side,
    /// f on the left, g on the right.
    pub coordinate: Elem,
    pub branch: Branch,
}

/// e = u·w·v with u, v ∈ U and w monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Factorization {
    u: Matrix,
    w: MonomialMatrix,
    v: Matrix,
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={:?} w={} v={:?}", self.u, self.w, self.v)
    }
}

impl Factorization {
    pub fn identity(ring: &Ring, n: usize) -> Factorization {
        Factorization { u: Matrix::identity(ring, n), w: MonomialMatrix::identity(ring, n), v: Matrix::identity(ring, n) }
    }

    pub fn from_parts(u: Matrix, w: MonomialMatrix, v: Matrix) -> Result<Factorization> {
        if !u.in_u() || !v.in_u() {
            return Err(TwlError::Domain("u and v must lie in U".into()));
        }
        if u.n() != w.n() || v.n() != w.n() {
            return Err(TwlError::Domain("size mismatch".into()));
        }
        Ok(Factorization { u, w, v })
    }

    pub fn ring(&self) -> &Ring {
        self.u.ring()
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn w(&self) -> &MonomialMatrix {
        &self.w
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn u_word(&self) -> Result<GroupWord> {
        u_word(&self.u)
    }

    pub fn v_word(&self) -> Result<GroupWord> {
        u_word(&self.v)
    }

    /// The represented element u·w·v.
    pub fn matrix(&self) -> Matrix {
        self.u.mul_monomial(&self.w).mul(&self.v)
    }

    pub fn represents(&self, m: &Matrix) -> bool {
        self.u.in_u() && self.v.in_u() && &self.matrix() == m
    }

    fn check_simple(&self, a: &AffineRoot) -> Result<()> {
        if a.simple_index(self.n()).is_none() {
            return Err(TwlError::Domain(format!("{a} is not a simple affine root for n = {}", self.n())));
        }
        Ok(())
    }

    /// The x_ȧ component sitting next to w: G with v = x_ȧ(G)·z, or F with u = y·x_ȧ(−F).
    fn component(&self, a: &AffineRoot, side: Side) -> Poly {
        let (i, j, m) = (a.root.i, a.root.j, a.m);
        match side {
            Side::Right => self.v.get(i, j).truncate(m, m),
            Side::Left => -self.u.get(i, j).truncate(m, m),
        }
    }

    /// f (left) or g (right) in e = y·x_ȧ(−f)·w·x_ȧ(g)·z.
    pub fn local_coordinate(&self, a: &AffineRoot, side: Side) -> Result<Elem> {
        self.check_simple(a)?;
        self.stripped(a, side, &self.component(a, side))?;
        Ok(self.component(a, side).right_coeff(a.m))
    }

    /// y or z with the x_ȧ component removed, conjugated past w_ȧ(C); checked to lie in U.
    fn stripped(&self, a: &AffineRoot, side: Side, comp: &Poly) -> Result<(Matrix, MonomialMatrix)> {
        let (i, j) = (a.root.i, a.root.j);
        let one = self.ring().one();
        let wc = MonomialMatrix::w_affine(self.ring(), self.n(), a, &one)?;
        let m = match side {
            Side::Right => {
                let mut z = self.v.clone();
                z.left_x(i, j, &-comp);
                z.conj_by(&wc.inv())
            }
            Side::Left => {
                let mut y = self.u.clone();
                y.right_x(i, j, comp);
                y.conj_by(&wc)
            }
        };
        if !m.in_u() {
            return internal(format!("{} coordinate at {a}: remainder does not conjugate into U", side.label()));
        }
        Ok((m, wc))
    }

    /// e·w_ȧ(c) for simple ȧ and c ∈ D^×.
    pub fn step_right(&self, a: &AffineRoot, c: &Elem) -> Result<(Factorization, StepInfo)> {
        self.check_simple(a)?;
        let (ring, n) = (self.ring().clone(), self.n());
        let (i, j) = (a.root.i, a.root.j);
        let big_c = affine_unit(a, c, &ring)?;
        let wc = MonomialMatrix::w(&ring, n, i, j, &big_c);
        let g = self.component(a, Side::Right);
        let mut z = self.v.clone();
        z.left_x(i, j, &-&g);
        let z = z.conj_by(&wc.inv());
        if !z.in_u() {
            return internal(format!("right coordinate at {a}: remainder does not conjugate into U"));
        }
        let coordinate = g.right_coeff(a.m);
        let mut u = self.u.clone();
        let plain = g.is_zero() || self.w.act_root(a).is_positive();
        let (w, v) = if plain {
            if !g.is_zero() {
                let (p, q, e) = self.w.conj_entry(i, j, &g);
                u.right_x(p, q, &e);
            }
            (self.w.mul(&wc), z)
        } else {
            // x_ij(G)·w_ij(C) = x_ji(G⁻¹)·diag(−GC⁻¹, −G⁻¹C)·x_ij(−CG⁻¹C)
            let gu = g.as_unit().expect("single nonzero term");
            let gi = gu.inv();
            let (p, q, e) = self.w.conj_entry(j, i, &gi.to_poly());
            u.right_x(p, q, &e);
            let d = MonomialMatrix::diag_pair(&ring, n, i, j, &gu.mul(&big_c.inv()).neg(), &gi.mul(&big_c).neg());
            let mut v = z;
            v.left_x(i, j, &big_c.mul(&gi).mul(&big_c).neg().to_poly());
            (self.w.mul(&d), v)
        };
        let branch = if plain { Branch::K3 } else { Branch::K4 };
        Ok((Factorization { u, w, v }, StepInfo { root: *a, side: Side::Right, coordinate, branch }))
    }

    /// w_ȧ(c)·e for simple ȧ and c ∈ D^×.
    pub fn step_left(&self, a: &AffineRoot, c: &Elem) -> Result<(Factorization, StepInfo)> {
        self.check_simple(a)?;
        let (ring, n) = (self.ring().clone(), self.n());
        let (i, j) = (a.root.i, a.root.j);
        let big_c = affine_unit(a, c, &ring)?;
        let wc = MonomialMatrix::w(&ring, n, i, j, &big_c);
        let f = self.component(a, Side::Left);
        let mut y = self.u.clone();
        y.right_x(i, j, &f);
        let mut u = y.conj_by(&wc);
        if !u.in_u() {
            return internal(format!("left coordinate at {a}: remainder does not conjugate into U"));
        }
        let coordinate = f.right_coeff(a.m);
        let winv = self.w.inv();
        let mut v = self.v.clone();
        let plain = f.is_zero() || winv.act_root(a).is_positive();
        let w = if plain {
            if !f.is_zero() {
                let (p, q, e) = winv.conj_entry(i, j, &-&f);
                v.left_x(p, q, &e);
            }
            wc.mul(&self.w)
        } else {
            // w_ij(C)·x_ij(−F) = x_ij(CF⁻¹C)·diag(CF⁻¹, C⁻¹F)·x_ji(−F⁻¹)
            let fu = f.as_unit().expect("single nonzero term");
            let fi = fu.inv();
            u.right_x(i, j, &big_c.mul(&fi).mul(&big_c).to_poly());
            let (p, q, e) = winv.conj_entry(j, i, &fi.neg().to_poly());
            v.left_x(p, q, &e);
            MonomialMatrix::diag_pair(&ring, n, i, j, &big_c.mul(&fi), &big_c.inv().mul(&fu)).mul(&self.w)
        };
        let branch = if plain { Branch::K1 } else { Branch::K2 };
        Ok((Factorization { u, w, v }, StepInfo { root: *a, side: Side::Left, coordinate, branch }))
    }

    /// w_ȧ(1)·e on the left, e·w_ȧ(−1) on the right.
    pub fn rho_step(&self, a: &AffineRoot, side: Side) -> Result<(Factorization, StepInfo)> {
        let ring = self.ring();
        match side {
            Side::Left => self.step_left(a, &ring.one()),
            Side::Right => self.step_right(a, &ring.from_int(-1)),
        }
    }

    fn absorb(&mut self, s: &Simple, side: Side) -> Result<()> {
        let ring = self.ring().clone();
        match (s, side) {
            (Simple::X(b, c), Side::Right) => self.v.right_x(b.root.i, b.root.j, &affine_poly(b, c, &ring)),
            (Simple::X(b, c), Side::Left) => self.u.left_x(b.root.i, b.root.j, &affine_poly(b, c, &ring)),
            (Simple::W(a, c), Side::Right) => *self = self.step_right(a, c)?.0,
            (Simple::W(a, c), Side::Left) => *self = self.step_left(a, c)?.0,
        }
        Ok(())
    }

    /// e·l for one letter.
    pub fn absorb_right(&mut self, l: &Letter) -> Result<()> {
        for s in simple_letters(l, self.n())? {
            self.absorb(&s, Side::Right)?;
        }
        Ok(())
    }

    /// l·e for one letter.
    pub fn absorb_left(&mut self, l: &Letter) -> Result<()> {
        for s in simple_letters(l, self.n())?.iter().rev() {
            self.absorb(s, Side::Left)?;
        }
        Ok(())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: Result<GroupWord>| w.map(|w| w.to_string()).unwrap_or_else(|e| format!("<{e}>"));
        writeln!(f, "u = {}", show(self.u_word()))?;
        writeln!(f, "w = {}", self.w)?;
        write!(f, "v = {}", show(self.v_word()))
    }
}

/// x_ȧ(c) with ȧ positive, or w_ȧ(c) with ȧ simple and c = ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Simple {
    X(AffineRoot, Elem),
    W(AffineRoot, Elem),
}

/// x_β̇(c) = n·x_ȧ(c′)·n⁻¹ with n = w_{ȧ₁}(1)⋯w_{ȧ_r}(1) when β̇ is negative.
fn x_simple(b: &AffineRoot, c: &Elem, ring: &Ring, n: usize) -> Result<Vec<Simple>> {
    if b.is_positive() {
        return Ok(vec![Simple::X(*b, c.clone())]);
    }
    let (word, target) = reduce_to_simple(b, n)?;
    let a = AffineRoot::simple(n, target);
    let one = ring.one();
    let minus = ring.from_int(-1);
    let mut nm = MonomialMatrix::identity(ring, n);
    for &idx in &word {
        nm = nm.mul(&MonomialMatrix::w_affine(ring, n, &AffineRoot::simple(n, idx), &one)?);
    }
    let conj = nm.conj_x(b, c, -1);
    if conj.root != a {
        return internal(format!("reduction of {b} landed on {} instead of {a}", conj.root));
    }
    let mut out: Vec<Simple> = word.iter().map(|&idx| Simple::W(AffineRoot::simple(n, idx), one.clone())).collect();
    out.push(Simple::X(a, conj.coeff));
    out.extend(word.iter().rev().map(|&idx| Simple::W(AffineRoot::simple(n, idx), minus.clone())));
    Ok(out)
}

fn x_letters(i: usize, j: usize, f: &Poly, n: usize) -> Result<Vec<Simple>> {
    let mut out = Vec::new();
    for mono in f.monomials() {
        let root = crate::roots::FiniteRoot::new(i, j)?;
        let (m, c) = affine_coeff(&root, &mono).expect("single term");
        out.extend(x_simple(&AffineRoot { root, m }, &c, f.ring(), n)?);
    }
    Ok(out)
}

/// Rewrites one letter into simple letters whose product is the letter.
fn simple_letters(l: &Letter, n: usize) -> Result<Vec<Simple>> {
    if !l.fits(n) {
        return Err(TwlError::Domain(format!("letter {l} does not fit n = {n}")));
    }
    let (i, j) = (l.root.i, l.root.j);
    let w_of = |u: &Unit| -> Result<Vec<Simple>> {
        let up = u.to_poly();
        let mut out = x_letters(i, j, &up, n)?;
        out.extend(x_letters(j, i, &u.inv().neg().to_poly(), n)?);
        out.extend(x_letters(i, j, &up, n)?);
        Ok(out)
    };
    match l.kind {
        Kind::X => x_letters(i, j, &l.payload, n),
        Kind::W => w_of(&l.unit()),
        Kind::H => {
            let mut out = w_of(&l.unit())?;
            out.extend(w_of(&Unit::minus_one(l.ring()))?);
            Ok(out)
        }
    }
}

/// Left-to-right absorption: each letter multiplies the running factorization on the right.
pub fn factorize(word: &GroupWord) -> Result<Factorization> {
    let mut fac = Factorization::identity(word.ring(), word.n());
    for l in word.letters() {
        fac.absorb_right(l)?;
    }
    Ok(fac)
}

/// Right-to-left absorption, an independent route to the same ρ.
pub fn factorize_rev(word: &GroupWord) -> Result<Factorization> {
    let mut fac = Factorization::identity(word.ring(), word.n());
    for l in word.letters().iter().rev() {
        fac.absorb_left(l)?;
    }
    Ok(fac)
}

pub fn rho(word: &GroupWord) -> Result<MonomialMatrix> {
    Ok(factorize(word)?.w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> Ring {
        Ring::finite_field(2, 2, 1).unwrap()
    }

    fn word(r: &Ring, n: usize, s: &str) -> GroupWord {
        GroupWord::parse(r, n, s).unwrap()
    }

    #[test]
    fn positive_letters_stay_in_v() {
        let r = f4();
        let w = word(&r, 2, "x[1,2](g + t)");
        let fac = factorize(&w).unwrap();
        assert!(fac.w().is_identity() && fac.u().is_identity());
        assert_eq!(fac.v(), &w.matrix());
    }

    #[test]
    fn lower_letter_example() {
        // [[1,0],[g,1]] = x12(g⁻¹)·w12(−g⁻¹)·x12(g⁻¹)
        for r in [Ring::finite_field(5, 1, 1).unwrap(), f4(), Ring::hamilton()] {
            let g = r.generator().unwrap_or_else(|_| r.quat_basis(1).unwrap());
            let g = Unit::scalar(&r, r.add(&g, &r.one())).unwrap();
            let e = GroupWord::new(&r, 2, vec![Letter::x(2, 1, g.to_poly()).unwrap()]).unwrap();
            let fac = factorize(&e).unwrap();
            assert!(fac.represents(&e.matrix()));
            assert_eq!(fac.w(), &MonomialMatrix::w(&r, 2, 1, 2, &g.inv().neg()));
            assert_eq!(factorize_rev(&e).unwrap().w(), fac.w());
            let x = Letter::x(1, 2, g.inv().to_poly()).unwrap().matrix(2).unwrap();
            assert_eq!(fac.u(), &x);
            assert_eq!(fac.v(), &x);
        }
    }

    #[test]
    fn monomial_letters_are_their_own_rho() {
        let r = f4();
        let e = word(&r, 2, "w[1,2](g*t^2)");
        let fac = factorize(&e).unwrap();
        assert!(fac.represents(&e.matrix()));
        assert_eq!(fac.w().to_matrix(), e.matrix());
        let e = word(&r, 2, "x[1,2](g)*w[1,2](1)*x[1,2](t)");
        assert_eq!(rho(&e).unwrap().to_matrix(), word(&r, 2, "w[1,2](1)").matrix());
    }

    #[test]
    fn right_step_example() {
        // e = x21(1); e·w12(−1) = [[0,−1],[1,−1]]
        let r = f4();
        let e = word(&r, 2, "x[2,1](1)");
        let fac = factorize(&e).unwrap();
        let a = AffineRoot::simple(2, 1);
        assert!(r.is_one(&fac.local_coordinate(&a, Side::Right).unwrap()));
        let (next, info) = fac.rho_step(&a, Side::Right).unwrap();
        assert_eq!(info.branch, Branch::K4);
        let target = e.concat(&word(&r, 2, "w[1,2](-1)"));
        assert!(next.represents(&target.matrix()));
        assert_eq!(next.w(), &MonomialMatrix::w(&r, 2, 1, 2, &Unit::minus_one(&r)));
        assert_eq!(next.w(), factorize(&target).unwrap().w());
    }

    #[test]
    fn left_step_on_monomial() {
        let r = f4();
        let u = Unit::new(&r, r.generator().unwrap(), 1).unwrap();
        let fac = factorize(&GroupWord::new(&r, 2, vec![Letter::w(1, 2, &u).unwrap()]).unwrap()).unwrap();
        let a = AffineRoot::simple(2, 1);
        let (next, info) = fac.rho_step(&a, Side::Left).unwrap();
        assert_eq!(info.branch, Branch::K1);
        let expected = MonomialMatrix::w(&r, 2, 1, 2, &Unit::one(&r)).mul(&MonomialMatrix::w(&r, 2, 1, 2, &u));
        assert_eq!(next.w(), &expected);
    }

    #[test]
    fn local_coordinates() {
        let r = f4();
        let a1 = AffineRoot::simple(2, 1);
        let a0 = AffineRoot::simple(2, 0);
        let g = r.generator().unwrap();
        let fac = factorize(&word(&r, 2, "x[1,2](g)")).unwrap();
        assert_eq!(fac.local_coordinate(&a1, Side::Right).unwrap(), g);
        let fac = factorize(&word(&r, 2, "x[1,2](g*t)")).unwrap();
        assert!(r.is_zero(&fac.local_coordinate(&a1, Side::Right).unwrap()));
        let fac = factorize(&word(&r, 2, "xa[2,1,1](g)")).unwrap();
        assert_eq!(fac.local_coordinate(&a0, Side::Right).unwrap(), g);
        assert!(fac.local_coordinate(&AffineRoot::new(1, 2, 1).unwrap(), Side::Right).is_err());
    }

    #[test]
    fn random_words_factor_consistently() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for ring in [f4(), Ring::finite_field(3, 2, 1).unwrap(), Ring::hamilton()] {
            for n in 2..=3 {
                for _ in 0..15 {
                    let len = rng.gen_range(0..8);
                    let e = audit::random_word(&ring, n, len, 2, &mut rng);
                    let m = e.matrix();
                    let a = factorize(&e).unwrap();
                    let b = factorize_rev(&e).unwrap();
                    assert!(a.represents(&m), "{e}");
                    assert!(b.represents(&m), "{e}");
                    assert_eq!(a.w(), b.w(), "{e}");
                }
            }
        }
    }
}
