//! The extensions H̃ → T and Ñ → N by the symbol group, kept in normal form.
//!
//! An element of H̃ is z(ξ)·h̃₁₂(v₁)h̃₁₃(v₂)⋯h̃₁ₙ(v_{n−1}) with ξ a formal symbol word (P for n = 2,
//! Q for n ≥ 3). Products are brought back to that shape with
//!   h̃₁ₘ(a)h̃₁ₘ(b) = z(c(a, b))h̃₁ₘ(ba),
//!   h̃₁ⱼ(a)h̃₁ₖ(b) = z(c(a, b))h̃₁ₖ(b)h̃₁ⱼ(a),
//!   h̃ z(q) = z(^d q) h̃ with d the (1,1) entry of π(h̃)   (n ≥ 3),
//!   h̃(a) z(q) = z(c(a, φ(q)) q) h̃(a)                      (n = 2),
//! and h̃_{i1}(u) = h̃_{1i}(u)⁻¹, h̃_{ij}(u) = h̃_{1j}(u)h̃_{1i}(u)⁻¹ for the remaining letters.
//! Symbols with an entry equal to 1 are dropped, since h̃(1) = 1 forces them to be trivial.
//!
//! Ñ is stored as h·W_σ, W_σ the product of the lifts w̃_k (ψ(w̃_k) = w_{k,k+1}(−1)) along a
//! reduced word of σ; the braid relations make W_σ independent of the word chosen.
//! Elements are compared through certificates: the diagonal image and, over F_q[t, t⁻¹],
//! the image in the tame model of the torus.

pub mod audit;
pub mod pairs;

use std::fmt;

use crate::error::{domain, internal, Result};
use crate::linear::MonomialMatrix;
use crate::ring::{Ring, Unit};
use crate::steinberg::torus::{Certificate, TorusWord};
use crate::symbols::{symbol_image, zeta, Presentation, SymbolWord};

pub use audit::audit_extension;
pub use pairs::{h_dot, w_dot, Generator, Lift, XPair};

fn presentation(n: usize) -> Presentation {
    if n == 2 {
        Presentation::P
    } else {
        Presentation::Q
    }
}

fn product(ring: &Ring, us: &[Unit]) -> Unit {
    us.iter().fold(Unit::one(ring), |acc, u| acc.mul(u))
}

/// One letter h̃_ij(u)^{±1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HLetter {
    pub i: usize,
    pub j: usize,
    pub u: Unit,
    pub inv: bool,
}

impl HLetter {
    fn new(i: usize, j: usize, u: Unit, inv: bool) -> HLetter {
        HLetter { i, j, u, inv }
    }
}

/// z(ξ)·h̃₁₂(v₁)⋯h̃₁ₙ(v_{n−1}).
#[derive(Clone, PartialEq, Eq)]
pub struct HTilde {
    ring: Ring,
    n: usize,
    xi: SymbolWord,
    v: Vec<Unit>,
}

impl fmt::Display for HTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.xi.is_empty() {
            parts.push(format!("z({})", self.xi));
        }
        for (m, v) in self.v.iter().enumerate() {
            if !v.is_one() {
                parts.push(format!("hh[1,{}]({v})", m + 2));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl fmt::Debug for HTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl HTilde {
    pub fn identity(ring: &Ring, n: usize) -> Result<HTilde> {
        if n < 2 {
            return domain(format!("H~ needs n >= 2, got {n}"));
        }
        Ok(HTilde { ring: ring.clone(), n, xi: SymbolWord::empty(ring, presentation(n)), v: vec![Unit::one(ring); n - 1] })
    }

    /// z(q); q must use P for n = 2 and Q otherwise.
    pub fn z(n: usize, q: &SymbolWord) -> Result<HTilde> {
        if q.kind() != presentation(n) {
            return domain(format!("z(q) at n = {n} needs a {:?} word", presentation(n)));
        }
        let mut out = HTilde::identity(q.ring(), n)?;
        out.xi = q.clone();
        Ok(out)
    }

    /// h̃_ij(u); at n = 2 only h̃₁₂ = h̃ exists.
    pub fn letter(n: usize, i: usize, j: usize, u: &Unit) -> Result<HTilde> {
        let mut out = HTilde::identity(u.ring(), n)?;
        out.mul_letter(i, j, u, false)?;
        Ok(out)
    }

    /// h̃₁₂(v₁)⋯h̃₁ₙ(v_{n−1}).
    pub fn basis(ring: &Ring, v: Vec<Unit>) -> Result<HTilde> {
        let mut out = HTilde::identity(ring, v.len() + 1)?;
        out.v = v;
        Ok(out)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn xi(&self) -> &SymbolWord {
        &self.xi
    }

    /// (v₁, …, v_{n−1}); for n = 2 the single entry is s in ξ·h̃(s).
    pub fn torus_part(&self) -> &[Unit] {
        &self.v
    }

    /// Appends c(^x a, ^x b)^{±1} to ξ.
    fn emit(&mut self, a: &Unit, b: &Unit, x: &Unit, inv: bool) {
        if a.is_one() || b.is_one() {
            return;
        }
        self.xi.push(&x.conj(a), &x.conj(b), inv);
    }

    /// self·z(q).
    pub fn mul_z(&mut self, q: &SymbolWord) {
        if q.is_empty() {
            return;
        }
        if self.n == 2 {
            let s = self.v[0].clone();
            self.emit(&s, &symbol_image(q), &Unit::one(&self.ring), false);
            self.xi.append(q);
        } else {
            let d = product(&self.ring, &self.v);
            self.xi.append(&q.conj_by(&d));
        }
    }

    /// self·h̃₁ₖ(u), 2 ≤ k ≤ n.
    fn mul_basis(&mut self, k: usize, u: &Unit) {
        if u.is_one() {
            return;
        }
        let idx = k - 2;
        for m in (idx + 1..self.n - 1).rev() {
            let (a, x) = (self.v[m].clone(), product(&self.ring, &self.v[..m]));
            self.emit(&a, u, &x, false);
        }
        let (a, x) = (self.v[idx].clone(), product(&self.ring, &self.v[..idx]));
        self.emit(&a, u, &x, false);
        self.v[idx] = u.mul(&a);
    }

    /// self·h̃₁ₖ(u)⁻¹, using h̃(u)⁻¹ = h̃(u⁻¹)z(c(u, u⁻¹))⁻¹.
    fn mul_basis_inv(&mut self, k: usize, u: &Unit) {
        if u.is_one() {
            return;
        }
        self.mul_basis(k, &u.inv());
        let mut q = SymbolWord::empty(&self.ring, presentation(self.n));
        q.push(u, &u.inv(), true);
        self.mul_z(&q);
    }

    /// self·h̃_ij(u)^{±1}.
    pub fn mul_letter(&mut self, i: usize, j: usize, u: &Unit, inv: bool) -> Result<()> {
        let n = self.n;
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return domain(format!("h~[{i},{j}] does not fit n = {n}"));
        }
        if n == 2 && i != 1 {
            return domain("at n = 2 the generators are h~(u) = h~[1,2](u)");
        }
        match (i, j, inv) {
            (1, j, false) => self.mul_basis(j, u),
            (1, j, true) => self.mul_basis_inv(j, u),
            (i, 1, false) => self.mul_basis_inv(i, u),
            (i, 1, true) => self.mul_basis(i, u),
            (i, j, false) => {
                self.mul_basis(j, u);
                self.mul_basis_inv(i, u);
            }
            (i, j, true) => {
                self.mul_basis(i, u);
                self.mul_basis_inv(j, u);
            }
        }
        Ok(())
    }

    pub fn mul_letters(&mut self, letters: &[HLetter]) -> Result<()> {
        letters.iter().try_for_each(|l| self.mul_letter(l.i, l.j, &l.u, l.inv))
    }

    pub fn mul(&self, other: &HTilde) -> HTilde {
        let mut out = self.clone();
        out.mul_z(&other.xi);
        for (m, v) in other.v.iter().enumerate() {
            out.mul_basis(m + 2, v);
        }
        out
    }

    pub fn inverse(&self) -> HTilde {
        let mut out = HTilde::identity(&self.ring, self.n).expect("n checked at construction");
        for m in (0..self.n - 1).rev() {
            out.mul_basis_inv(m + 2, &self.v[m]);
        }
        out.mul_z(&self.xi.inverse());
        out
    }

    /// π: diag(φ(ξ)v₁⋯v_{n−1}, v₁⁻¹, …, v_{n−1}⁻¹).
    pub fn pi(&self) -> MonomialMatrix {
        let mut d = vec![symbol_image(&self.xi).mul(&product(&self.ring, &self.v))];
        d.extend(self.v.iter().map(Unit::inv));
        MonomialMatrix::diag(d)
    }

    /// The same element as a word in ĥ-letters of St(n).
    pub fn torus_word(&self) -> Result<TorusWord> {
        let mut out = zeta(&self.xi, self.n)?;
        for (m, v) in self.v.iter().enumerate() {
            out = out.concat(&TorusWord::h(self.n, 1, m + 2, v)?);
        }
        Ok(out)
    }

    pub fn certificate(&self) -> Result<Certificate> {
        let tame = if self.ring.is_commutative_untwisted() { Some(self.torus_word()?.tame_model()?) } else { None };
        Ok(Certificate { phi: self.pi().to_matrix(), tame })
    }

    pub fn same(&self, other: &HTilde) -> Result<bool> {
        Ok(self.n == other.n && self.certificate()?.agrees(&other.certificate()?))
    }

    /// Kernel of π: φ(ξ) = 1 and every v_m = 1.
    pub fn in_kernel(&self) -> bool {
        self.pi().is_identity()
    }

    /// Expansion into letters, with z(c(a, b)) = h̃₁₂(a)h̃₁₂(b)h̃₁₂(ba)⁻¹.
    pub fn letters(&self) -> Vec<HLetter> {
        let mut out = Vec::new();
        for s in self.xi.symbols() {
            let three = [
                HLetter::new(1, 2, s.u.clone(), false),
                HLetter::new(1, 2, s.v.clone(), false),
                HLetter::new(1, 2, s.v.mul(&s.u), true),
            ];
            if s.inv {
                out.extend(three.into_iter().rev().map(|l| HLetter { inv: !l.inv, ..l }));
            } else {
                out.extend(three);
            }
        }
        for (m, v) in self.v.iter().enumerate() {
            if !v.is_one() {
                out.push(HLetter::new(1, m + 2, v.clone(), false));
            }
        }
        out
    }
}

/// w₁₂(u)·h̃(v) = h̃(uv⁻¹u)h̃(u²)⁻¹ (n = 2).
pub fn act_rank_one(u: &Unit, v: &Unit) -> Vec<HLetter> {
    vec![HLetter::new(1, 2, u.mul(&v.inv()).mul(u), false), HLetter::new(1, 2, u.mul(u), true)]
}

/// w_ij(u)·h̃_kl(v) by the case table. `printed` keeps the i = l, j = k row as displayed,
/// h̃_ij(−uvu)h̃_ji(−u²)⁻¹; otherwise the second factor is h̃_ij(−u²)⁻¹, which is the form π accepts.
pub fn act_table(i: usize, j: usize, u: &Unit, k: usize, l: usize, v: &Unit, printed: bool) -> Vec<HLetter> {
    let ui = u.inv();
    let neg = |x: Unit| x.neg();
    let pair = |a: usize, b: usize, x: Unit, y: Unit| vec![HLetter::new(a, b, x, false), HLetter::new(a, b, y, true)];
    if i != k && i != l && j != k && j != l {
        vec![HLetter::new(k, l, v.clone(), false)]
    } else if i == k && j == l {
        pair(j, i, neg(ui.mul(v).mul(&ui)), neg(ui.mul(&ui)))
    } else if i == l && j == k {
        let first = HLetter::new(i, j, neg(u.mul(v).mul(u)), false);
        let (a, b) = if printed { (j, i) } else { (i, j) };
        vec![first, HLetter::new(a, b, neg(u.mul(u)), true)]
    } else if i == k {
        pair(j, l, neg(ui.mul(v)), neg(ui))
    } else if i == l {
        pair(k, j, neg(v.mul(u)), neg(u.clone()))
    } else if j == k {
        pair(i, l, u.mul(v), u.clone())
    } else {
        pair(k, i, v.mul(&ui), ui)
    }
}

/// w_ij(u)·h for a generator of N, letter by letter through the tables (ξ expanded by (H7)).
pub fn act_generator(i: usize, j: usize, u: &Unit, h: &HTilde, printed: bool) -> Result<HTilde> {
    let n = h.n;
    let (i, j, u) = if n == 2 && i == 2 { (1, 2, u.inv().neg()) } else { (i, j, u.clone()) };
    let mut out = HTilde::identity(&h.ring, n)?;
    for l in h.letters() {
        let image = if n == 2 { act_rank_one(&u, &l.u) } else { act_table(i, j, &u, l.i, l.j, &l.u, printed) };
        if l.inv {
            let mut g = HTilde::identity(&h.ring, n)?;
            g.mul_letters(&image)?;
            out = out.mul(&g.inverse());
        } else {
            out.mul_letters(&image)?;
        }
    }
    Ok(out)
}

/// w̃_k·h·w̃_k⁻¹ = w_{k,k+1}(−1)·h. Letters go through the tables; ξ uses the shortcut
/// w̃₁ z(q) w̃₁⁻¹ = h̃₁₂(φ(q)⁻¹) z(q), and z(q) is fixed by w̃_k for k ≥ 2.
pub fn act_simple(k: usize, h: &HTilde) -> Result<HTilde> {
    let (n, ring) = (h.n, &h.ring);
    let minus = Unit::minus_one(ring);
    let mut out = HTilde::identity(ring, n)?;
    if k == 1 {
        out.mul_basis(2, &symbol_image(&h.xi).inv());
    }
    out.mul_z(&h.xi);
    for (m, v) in h.v.iter().enumerate() {
        if v.is_one() {
            continue;
        }
        let image = if n == 2 { act_rank_one(&minus, v) } else { act_table(k, k + 1, &minus, 1, m + 2, v, false) };
        out.mul_letters(&image)?;
    }
    Ok(out)
}

/// Inversions of σ.
pub fn weyl_length(sigma: &[usize]) -> usize {
    (0..sigma.len()).map(|a| (a + 1..sigma.len()).filter(|&b| sigma[a] > sigma[b]).count()).sum()
}

/// A reduced word k₁⋯k_r (1-based) with σ = s_{k₁}⋯s_{k_r}, peeling the smallest right descent.
pub fn reduced_word(sigma: &[usize]) -> Vec<usize> {
    let mut s = sigma.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..s.len().saturating_sub(1)).find(|&k| s[k] > s[k + 1]) {
        s.swap(k, k + 1);
        word.push(k + 1);
    }
    word.reverse();
    word
}

/// ψ(W_σ).
pub fn weyl_psi(ring: &Ring, sigma: &[usize]) -> MonomialMatrix {
    let n = sigma.len();
    let minus = Unit::minus_one(ring);
    reduced_word(sigma)
        .into_iter()
        .fold(MonomialMatrix::identity(ring, n), |acc, k| acc.mul(&MonomialMatrix::w(ring, n, k, k + 1, &minus)))
}

/// W_σ·h·W_σ⁻¹.
fn act_weyl(sigma: &[usize], h: &HTilde) -> Result<HTilde> {
    reduced_word(sigma).into_iter().rev().try_fold(h.clone(), |acc, k| act_simple(k, &acc))
}

/// h·W_σ in Ñ; σ is 0-based in the column-to-row convention of `MonomialMatrix`.
#[derive(Clone, PartialEq, Eq)]
pub struct NTilde {
    h: HTilde,
    sigma: Vec<usize>,
}

impl fmt::Display for NTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = reduced_word(&self.sigma).iter().map(|k| format!("ww{k}")).collect();
        if word.is_empty() {
            write!(f, "{}", self.h)
        } else {
            write!(f, "{}*{}", self.h, word.join("*"))
        }
    }
}

impl fmt::Debug for NTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl NTilde {
    pub fn identity(ring: &Ring, n: usize) -> Result<NTilde> {
        Ok(NTilde { h: HTilde::identity(ring, n)?, sigma: (0..n).collect() })
    }

    pub fn from_h(h: HTilde) -> NTilde {
        let sigma = (0..h.n).collect();
        NTilde { h, sigma }
    }

    /// w̃_k, the lift of w_{k,k+1}(−1); w₁ at n = 2.
    pub fn w_simple(ring: &Ring, n: usize, k: usize) -> Result<NTilde> {
        if k == 0 || k >= n {
            return domain(format!("no simple reflection s_{k} at n = {n}"));
        }
        let mut out = NTilde::identity(ring, n)?;
        out.sigma.swap(k - 1, k);
        Ok(out)
    }

    pub fn h(&self) -> &HTilde {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.n
    }

    pub fn ring(&self) -> &Ring {
        &self.h.ring
    }

    /// σ, 1-based.
    pub fn sigma(&self) -> Vec<usize> {
        self.sigma.iter().map(|s| s + 1).collect()
    }

    pub fn in_h(&self) -> bool {
        self.sigma.iter().enumerate().all(|(a, &s)| a == s)
    }

    pub fn mul_h(&mut self, g: &HTilde) -> Result<()> {
        let moved = act_weyl(&self.sigma, g)?;
        self.h = self.h.mul(&moved);
        Ok(())
    }

    /// self·w̃_k; when the length drops, w̃_k² = h̃_{k,k+1}(−1) is moved past W_{σs_k}.
    pub fn mul_w(&mut self, k: usize) -> Result<()> {
        let n = self.n();
        if k == 0 || k >= n {
            return domain(format!("no simple reflection s_{k} at n = {n}"));
        }
        let drops = self.sigma[k - 1] > self.sigma[k];
        self.sigma.swap(k - 1, k);
        if drops {
            let sq = HTilde::letter(n, k, k + 1, &Unit::minus_one(&self.h.ring))?;
            let moved = act_weyl(&self.sigma, &sq)?;
            self.h = self.h.mul(&moved);
        }
        Ok(())
    }

    pub fn mul(&self, other: &NTilde) -> Result<NTilde> {
        let mut out = self.clone();
        out.mul_h(&other.h)?;
        for k in reduced_word(&other.sigma) {
            out.mul_w(k)?;
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<NTilde> {
        let (ring, n) = (self.ring().clone(), self.n());
        let mut out = NTilde::identity(&ring, n)?;
        let minus = Unit::minus_one(&ring);
        for k in reduced_word(&self.sigma).into_iter().rev() {
            out.mul_w(k)?;
            out.mul_h(&HTilde::letter(n, k, k + 1, &minus)?.inverse())?;
        }
        out.mul_h(&self.h.inverse())?;
        Ok(out)
    }

    pub fn psi(&self) -> MonomialMatrix {
        self.h.pi().mul(&weyl_psi(&self.h.ring, &self.sigma))
    }

    pub fn same(&self, other: &NTilde) -> Result<bool> {
        Ok(self.sigma == other.sigma && self.h.same(&other.h)?)
    }

    /// self·g·self⁻¹ for g ∈ H̃.
    pub fn conj(&self, g: &HTilde) -> Result<HTilde> {
        let out = self.mul(&NTilde::from_h(g.clone()))?.mul(&self.inverse()?)?;
        if !out.in_h() {
            return internal("conjugate of an H~ element left H~");
        }
        Ok(out.h)
    }
}

/// w̃_ij(1) for i < j. Simple roots: w̃_k⁻¹. Otherwise V = w̃_{j−1}⋯w̃_{i+1} carries (i, i+1) to
/// (i, j) and w̃_ij(1) = h̃_ij(u_i u_{i+1}⁻¹)⁻¹ · V w̃_{i,i+1}(1) V⁻¹, with ψ(V) = P·diag(u).
pub fn w_one(ring: &Ring, n: usize, i: usize, j: usize) -> Result<NTilde> {
    if !(1 <= i && i < j && j <= n) {
        return domain(format!("w~[{i},{j}](1) needs 1 <= i < j <= {n}"));
    }
    if j == i + 1 {
        return NTilde::w_simple(ring, n, i)?.inverse();
    }
    let mut v = NTilde::identity(ring, n)?;
    for k in (i + 1..j).rev() {
        v.mul_w(k)?;
    }
    conjugated_lift(&v, i, i + 1, i, j)
}

/// The same lift reached from the other end: V = w̃_i⋯w̃_{j−2} carries (j−1, j) to (i, j).
pub fn w_one_alt(ring: &Ring, n: usize, i: usize, j: usize) -> Result<NTilde> {
    if !(1 <= i && i + 1 < j && j <= n) {
        return domain(format!("second route for w~[{i},{j}](1) needs j > i + 1"));
    }
    let mut v = NTilde::identity(ring, n)?;
    for k in i..j - 1 {
        v.mul_w(k)?;
    }
    conjugated_lift(&v, j - 1, j, i, j)
}

fn conjugated_lift(v: &NTilde, a: usize, b: usize, i: usize, j: usize) -> Result<NTilde> {
    let (ring, n) = (v.ring().clone(), v.n());
    let pv = v.psi();
    if (pv.sigma_of(a), pv.sigma_of(b)) != (i, j) {
        return internal(format!("V does not carry ({a},{b}) to ({i},{j})"));
    }
    let c = pv.unit(a).mul(&pv.unit(b).inv());
    let inner = v.mul(&NTilde::w_simple(&ring, n, a)?.inverse()?)?.mul(&v.inverse()?)?;
    NTilde::from_h(HTilde::letter(n, i, j, &c)?.inverse()).mul(&inner)
}

/// w̃_ij(u) = h̃_ij(u)·w̃_ij(1) for i < j, and w̃_ji(−u⁻¹) for i > j.
pub fn w_root(n: usize, i: usize, j: usize, u: &Unit) -> Result<NTilde> {
    if i > j {
        return w_root(n, j, i, &u.inv().neg());
    }
    let ring = u.ring();
    NTilde::from_h(HTilde::letter(n, i, j, u)?).mul(&w_one(ring, n, i, j)?)
}

/// What acts on H̃ in `n_act`.
#[derive(Clone, Debug)]
pub enum Acting {
    /// w_ij(u).
    Gen { i: usize, j: usize, u: Unit },
    Monomial(MonomialMatrix),
}

/// Splits M = diag(r, 1, …, 1)·ψ(L) with L = h·W_σ, h a basis element of H̃.
pub fn lift_monomial(m: &MonomialMatrix) -> Result<(NTilde, Unit)> {
    let ring = m.ring().clone();
    let sigma: Vec<usize> = m.sigma().iter().map(|s| s - 1).collect();
    let d = m.mul(&weyl_psi(&ring, &sigma).inv());
    if !d.is_diagonal() {
        return internal("M·ψ(W_σ)⁻¹ is not diagonal");
    }
    let v: Vec<Unit> = d.units()[1..].iter().map(Unit::inv).collect();
    let r = d.unit(1).mul(&product(&ring, &v).inv());
    Ok((NTilde { h: HTilde::basis(&ring, v)?, sigma }, r))
}

/// Conjugation by an element with π = diag(r, 1, …, 1): h̃₁ₘ(v) ↦ h̃₁ₘ(rv)h̃₁ₘ(r)⁻¹, ξ ↦ ^r ξ.
fn residual_act(r: &Unit, h: &HTilde) -> Result<HTilde> {
    if r.is_one() {
        return Ok(h.clone());
    }
    let mut out = HTilde::z(h.n, &h.xi.conj_by(r))?;
    for (m, v) in h.v.iter().enumerate() {
        out.mul_basis(m + 2, &r.mul(v));
        out.mul_basis_inv(m + 2, r);
    }
    Ok(out)
}

/// The action of N on H̃. Generators go through the case tables; a monomial matrix through a
/// lift in Ñ and conjugation there.
pub fn n_act(w: &Acting, h: &HTilde) -> Result<HTilde> {
    match w {
        Acting::Gen { i, j, u } => act_generator(*i, *j, u, h, false),
        Acting::Monomial(m) => {
            if m.n() != h.n {
                return domain("size mismatch");
            }
            let (lift, r) = lift_monomial(m)?;
            residual_act(&r, &lift.conj(h)?)
        }
    }
}

/// h·w₁·h⁻¹·w₁⁻¹ at n = 2, which should be h̃(u₁u₂⁻¹) for π(h) = diag(u₁, u₂).
pub fn conj_h_w1(h: &HTilde) -> Result<HTilde> {
    if h.n != 2 {
        return domain("conj_h_w1 is the n = 2 statement");
    }
    let w1 = NTilde::w_simple(&h.ring, 2, 1)?;
    let hn = NTilde::from_h(h.clone());
    let out = hn.mul(&w1)?.mul(&hn.inverse()?)?.mul(&w1.inverse()?)?;
    if !out.in_h() {
        return internal("h w1 h^-1 w1^-1 left H~");
    }
    Ok(out.h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_scalar, random_unit, sample_rng};

    fn f5() -> Ring {
        Ring::finite_field(5, 1, 0).unwrap()
    }

    fn f9() -> Ring {
        Ring::finite_field(3, 2, 1).unwrap()
    }

    #[test]
    fn rank_one_product_emits_the_symbol() {
        let r = f5();
        let (u, v) = (Unit::t_pow(&r, 1), Unit::from_int(&r, 2).unwrap());
        let prod = HTilde::letter(2, 1, 2, &u).unwrap().mul(&HTilde::letter(2, 1, 2, &v).unwrap());
        assert_eq!(prod.xi().to_string(), format!("c({u},{v})"));
        assert_eq!(prod.torus_part()[0], v.mul(&u));
        let one = Unit::one(&r);
        let triv = HTilde::letter(2, 1, 2, &one).unwrap().mul(&HTilde::letter(2, 1, 2, &one).unwrap());
        assert!(triv.xi().is_empty() && triv.in_kernel());
    }

    #[test]
    fn h12_times_h21_is_trivial() {
        let r = f9();
        let u = random_unit(&r, &mut sample_rng(1, "h1", 0), 2);
        let p = HTilde::letter(3, 1, 2, &u).unwrap().mul(&HTilde::letter(3, 2, 1, &u).unwrap());
        assert!(p.same(&HTilde::identity(&r, 3).unwrap()).unwrap());
    }

    #[test]
    fn products_and_inverses_match_pi_and_tame() {
        for (ring, n) in [(f5(), 2), (f5(), 3), (f9(), 3), (Ring::hamilton(), 3), (f5(), 4)] {
            for idx in 0..40 {
                let mut rng = sample_rng(3, "hmul", idx);
                let mut h = HTilde::identity(&ring, n).unwrap();
                let mut word = TorusWord::empty(&ring, n);
                for _ in 0..4 {
                    let i = rand::Rng::gen_range(&mut rng, 1..=n);
                    let j = (i % n) + 1;
                    let (i, j) = if n == 2 { (1, 2) } else { (i, j) };
                    let u = random_unit(&ring, &mut rng, 2);
                    let inv = rand::Rng::gen_bool(&mut rng, 0.5);
                    h.mul_letter(i, j, &u, inv).unwrap();
                    let l = TorusWord::h(n, i, j, &u).unwrap();
                    word = word.concat(&if inv { l.inverse() } else { l });
                }
                let expect = crate::steinberg::st_phi(&word.to_st());
                assert_eq!(h.pi().to_matrix(), expect, "{h}");
                if ring.is_commutative_untwisted() {
                    assert_eq!(h.certificate().unwrap().tame, Some(word.tame_model().unwrap()));
                }
                assert!(h.mul(&h.inverse()).same(&HTilde::identity(&ring, n).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn reduced_words_have_the_right_length() {
        let sigma = vec![2, 0, 3, 1];
        let w = reduced_word(&sigma);
        assert_eq!(w.len(), weyl_length(&sigma));
        let ring = f5();
        assert_eq!(weyl_psi(&ring, &sigma).sigma(), vec![3, 1, 4, 2]);
    }

    #[test]
    fn lifts_of_generators_map_to_generators() {
        for (ring, n) in [(f9(), 2), (f9(), 3), (Ring::hamilton(), 3), (f5(), 4)] {
            for idx in 0..10 {
                let mut rng = sample_rng(5, "wroot", idx);
                let u = random_unit(&ring, &mut rng, 2);
                for i in 1..=n {
                    for j in 1..=n {
                        if i != j && (n > 2 || i < j) {
                            let w = w_root(n, i, j, &u).unwrap();
                            assert_eq!(w.psi(), MonomialMatrix::w(&ring, n, i, j, &u), "w[{i},{j}]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ntilde_inverse_and_psi() {
        let ring = f9();
        for idx in 0..20 {
            let mut rng = sample_rng(6, "ninv", idx);
            let mut x = NTilde::identity(&ring, 3).unwrap();
            for _ in 0..5 {
                let k = rand::Rng::gen_range(&mut rng, 1..3);
                x.mul_w(k).unwrap();
                x.mul_h(&HTilde::letter(3, 1, 3, &random_unit(&ring, &mut rng, 2)).unwrap()).unwrap();
            }
            let y = x.mul(&x.inverse().unwrap()).unwrap();
            assert!(y.same(&NTilde::identity(&ring, 3).unwrap()).unwrap());
            assert_eq!(x.psi().mul(&x.inverse().unwrap().psi()), MonomialMatrix::identity(&ring, 3));
        }
    }

    #[test]
    fn h_w1_h_inverse_is_a_torus_letter() {
        let ring = f5();
        let v = random_scalar(&ring, &mut sample_rng(7, "l210", 0)).mul(&Unit::t_pow(&ring, 1));
        let h = HTilde::letter(2, 1, 2, &v).unwrap();
        let got = conj_h_w1(&h).unwrap();
        assert!(got.same(&HTilde::letter(2, 1, 2, &v.mul(&v)).unwrap()).unwrap());
    }

    #[test]
    fn n_act_matches_the_rank_one_formula() {
        let ring = f5();
        let v = Unit::t_pow(&ring, 2).mul(&Unit::from_int(&ring, 3).unwrap());
        let h = HTilde::letter(2, 1, 2, &v).unwrap();
        let got = n_act(&Acting::Gen { i: 1, j: 2, u: Unit::minus_one(&ring) }, &h).unwrap();
        assert!(got.same(&HTilde::letter(2, 1, 2, &v.inv()).unwrap()).unwrap());
        let m = MonomialMatrix::w(&ring, 2, 1, 2, &Unit::minus_one(&ring));
        assert!(n_act(&Acting::Monomial(m), &h).unwrap().same(&got).unwrap());
    }
}
