//! Audits for the factorization: the four step displays at n = 2 with their closed-form
//! coefficients, a random-word corpus, and double-coset invariance of ρ.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{factorize, factorize_rev, Side};
use crate::error::Result;
use crate::linear::{GroupWord, Letter, Matrix, MonomialMatrix};
use crate::report::{AuditReport, AuditRow};
use crate::ring::{Elem, Poly, Ring, Unit};
use crate::roots::AffineRoot;
use crate::sample::{distinct_indices, random_poly, random_scalar, random_unit, run_row, sample_rng, AuditConfig, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KCase {
    K1,
    K2,
    K3,
    K4,
}

impl KCase {
    pub const ALL: [KCase; 4] = [KCase::K1, KCase::K2, KCase::K3, KCase::K4];

    fn label(self) -> &'static str {
        match self {
            KCase::K1 => "k1",
            KCase::K2 => "k2",
            KCase::K3 => "k3",
            KCase::K4 => "k4",
        }
    }

    fn left(self) -> bool {
        matches!(self, KCase::K1 | KCase::K2)
    }

    /// The coordinate may be zero in the first and third cases.
    fn allows_zero(self) -> bool {
        matches!(self, KCase::K1 | KCase::K3)
    }
}

/// ȧ, w = (u1, u2) on the diagonal or anti-diagonal, and the coordinate f or g.
struct KSample {
    a: AffineRoot,
    w: MonomialMatrix,
    u1: Unit,
    u2: Unit,
    c: Elem,
}

fn up(u: &Unit) -> Poly {
    u.to_poly()
}

fn tp(ring: &Ring, k: i64) -> Poly {
    Poly::t_pow(ring, k)
}

fn cp(ring: &Ring, c: &Elem) -> Poly {
    Poly::constant(ring, c.clone())
}

/// The closed-form coefficient as printed, as an element of D_τ (expected of degree 0).
/// `dsign = -1` evaluates it with d replaced by −d.
fn printed_k(case: KCase, s: &KSample, ring: &Ring, dsign: i64) -> Poly {
    let anti = !s.w.is_diagonal();
    let affine = s.a.m == 1;
    let d = dsign * (s.u2.deg() - s.u1.deg());
    let (u1, u2, u1i, u2i) = (up(&s.u1), up(&s.u2), up(&s.u1.inv()), up(&s.u2.inv()));
    let c = cp(ring, &s.c);
    let ci = if ring.is_zero(&s.c) { Poly::zero(ring) } else { up(&Unit::scalar(ring, s.c.clone()).unwrap().inv()) };
    let (t_d, t_md) = (tp(ring, d), tp(ring, -d));
    let tau = |p: &Poly, j: i64| p.tau_apply(j);
    let prod = |ps: &[&Poly]| ps.iter().skip(1).fold(ps[0].clone(), |acc, p| &acc * *p);
    match (case, affine, anti) {
        (KCase::K1, false, false) => -prod(&[&u1i, &c, &u2, &t_md]),
        (KCase::K1, false, true) => -prod(&[&t_d, &u2i, &c, &u1]),
        (KCase::K1, true, false) => -prod(&[&t_md, &tau(&u2i, -1), &c, &u1]),
        (KCase::K1, true, true) => -prod(&[&u1i, &tau(&(&c * &u2), 1), &t_d]),
        (KCase::K2, false, false) => -prod(&[&t_md, &u2i, &ci, &u1]),
        (KCase::K2, false, true) => -prod(&[&u1i, &ci, &u2, &t_d]),
        (KCase::K2, true, false) => -prod(&[&u1i, &ci, &tau(&u2, -1), &t_md]),
        (KCase::K2, true, true) => -prod(&[&t_d, &tau(&(&u2i * &ci), 1), &u1]),
        (KCase::K3, false, false) => prod(&[&u1, &c, &u2i, &t_d]),
        (KCase::K3, false, true) => prod(&[&t_d, &u1, &c, &u2i]),
        (KCase::K3, true, false) => prod(&[&t_d, &tau(&u2, -1), &c, &u1i]),
        (KCase::K3, true, true) => prod(&[&u2, &tau(&(&c * &u1i), 1), &t_d]),
        (KCase::K4, false, false) => prod(&[&t_d, &u2, &ci, &u1i]),
        (KCase::K4, false, true) => prod(&[&u2, &ci, &u1i, &t_d]),
        (KCase::K4, true, false) => prod(&[&u1, &ci, &tau(&u2i, -1), &t_d]),
        (KCase::K4, true, true) => prod(&[&t_d, &tau(&(&u1 * &ci), 1), &u2i]),
    }
}

fn xm(a: &AffineRoot, c: &Elem, ring: &Ring) -> Matrix {
    Letter::xa(a, c, ring).and_then(|l| l.matrix(2)).expect("n = 2 root")
}

fn wm(a: &AffineRoot, c: &Elem, ring: &Ring) -> Matrix {
    MonomialMatrix::w_affine(ring, 2, a, c).expect("unit").to_matrix()
}

fn hm(a: &AffineRoot, c: &Elem, ring: &Ring) -> MonomialMatrix {
    MonomialMatrix::h_affine(ring, 2, a, c).expect("unit")
}

/// Both sides of the displayed identity for this case, with coefficient `k`.
fn sides(case: KCase, s: &KSample, k: &Elem, ring: &Ring) -> (Matrix, Matrix) {
    let (a, c, w) = (&s.a, &s.c, &s.w);
    let one = ring.one();
    let m1 = ring.from_int(-1);
    let wmat = w.to_matrix();
    match case {
        KCase::K1 => {
            let lhs = wm(a, &one, ring).mul(&xm(a, &ring.neg(c), ring)).mul(&wmat);
            let rhs = MonomialMatrix::w_affine(ring, 2, a, &one).unwrap().mul(w).to_matrix().mul(&xm(&w.inv().act_root(a), k, ring));
            (lhs, rhs)
        }
        KCase::K2 => {
            let lhs = wm(a, &one, ring).mul(&xm(a, &ring.neg(c), ring)).mul(&wmat);
            let h = hm(a, &one, ring).mul(&hm(a, c, ring).inv()).mul(w);
            let ci = ring.inv(c).unwrap();
            let rhs = xm(a, &ci, ring).mul(&h.to_matrix()).mul(&xm(&w.inv().act_root(&a.neg()), k, ring));
            (lhs, rhs)
        }
        KCase::K3 => {
            let lhs = wmat.mul(&xm(a, c, ring)).mul(&wm(a, &m1, ring));
            let rhs = xm(&w.act_root(a), k, ring).mul(&w.mul(&MonomialMatrix::w_affine(ring, 2, a, &m1).unwrap()).to_matrix());
            (lhs, rhs)
        }
        KCase::K4 => {
            let lhs = wmat.mul(&xm(a, c, ring)).mul(&wm(a, &m1, ring));
            let h = w.mul(&hm(a, c, ring)).mul(&hm(a, &one, ring).inv());
            let ci = ring.inv(c).unwrap();
            let rhs = xm(&w.act_root(&a.neg()), k, ring).mul(&h.to_matrix()).mul(&xm(a, &ring.neg(&ci), ring));
            (lhs, rhs)
        }
    }
}

/// Rejection-samples w and the coordinate until the case's branch condition holds.
fn sample_case(case: KCase, affine: bool, anti: bool, ring: &Ring, cap: i64, rng: &mut ChaCha8Rng) -> KSample {
    let a = AffineRoot::simple(2, if affine { 0 } else { 1 });
    loop {
        let u1 = random_unit(ring, rng, cap);
        let u2 = random_unit(ring, rng, cap);
        let sigma = if anti { vec![1, 0] } else { vec![0, 1] };
        let w = MonomialMatrix::new(sigma, vec![u1.clone(), u2.clone()]).unwrap();
        let zero = case.allows_zero() && rng.gen_bool(0.25);
        let c = if zero { ring.zero() } else { random_scalar(ring, rng).coeff().clone() };
        let moved = if case.left() { w.inv().act_root(&a) } else { w.act_root(&a) };
        let plain = zero || moved.is_positive();
        if plain == case.allows_zero() {
            return KSample { a, w, u1, u2, c };
        }
    }
}

/// Sixteen rows: k1–k4 × ȧ ∈ {α̇₁, α̇₀} × w diagonal or anti-diagonal; n is fixed at 2.
pub fn audit_k(cfg: &AuditConfig) -> AuditReport {
    let ring = &cfg.ring;
    let mut rep = AuditReport::new("step displays k1-k4", cfg.seed)
        .config("ring", ring.describe())
        .config("n", 2)
        .config("samples", cfg.samples)
        .config("degree_cap", cfg.degree_cap);
    for case in KCase::ALL {
        for affine in [false, true] {
            for anti in [false, true] {
                let branch = format!("{},{}", if affine { "a0" } else { "a1" }, if anti { "anti" } else { "diag" });
                rep.push(cfg.row(case.label(), &branch, |rng| {
                    let s = sample_case(case, affine, anti, ring, cfg.degree_cap, rng);
                    let holds = |k: &Poly| {
                        let constant = k.is_zero() || (k.min_exp() == Some(0) && k.max_exp() == Some(0));
                        constant && {
                            let (l, r) = sides(case, &s, &k.coeff(0), ring);
                            l == r
                        }
                    };
                    let printed = printed_k(case, &s, ring, 1);
                    Ok(Outcome::printed_or(
                        holds(&printed),
                        || holds(&printed_k(case, &s, ring, -1)),
                        || format!("w={} f/g={} printed k={} with d -> -d: {}", s.w, ring.show(&s.c), printed, printed_k(case, &s, ring, -1)),
                    ))
                }));
            }
        }
    }
    rep
}

/// Random word with letters x (multi-term payloads), w and h over random indices.
pub fn random_word(ring: &Ring, n: usize, max_len: usize, cap: i64, rng: &mut ChaCha8Rng) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let v = distinct_indices(n, 2, rng);
            match rng.gen_range(0..6) {
                0 => Letter::w(v[0], v[1], &random_unit(ring, rng, cap)),
                1 => Letter::h(v[0], v[1], &random_unit(ring, rng, cap)),
                _ => Letter::x(v[0], v[1], random_poly(ring, rng, cap)),
            }
            .expect("distinct indices")
        })
        .collect();
    GroupWord::new(ring, n, letters).expect("letters fit")
}

/// Word for a random element of U.
pub fn random_u_word(ring: &Ring, n: usize, len: usize, cap: i64, rng: &mut ChaCha8Rng) -> GroupWord {
    let letters = (0..len)
        .map(|_| {
            let v = distinct_indices(n, 2, rng);
            let lo = (v[0] > v[1]) as i64;
            Letter::x(v[0], v[1], Poly::monomial(ring, ring.random_elem(rng), rng.gen_range(lo..=lo + cap))).unwrap()
        })
        .collect();
    GroupWord::new(ring, n, letters).unwrap()
}

fn simple_step_word(ring: &Ring, n: usize, a: &AffineRoot, side: Side) -> GroupWord {
    let c = match side {
        Side::Left => ring.one(),
        Side::Right => ring.from_int(-1),
    };
    GroupWord::new(ring, n, vec![Letter::wa(a, &c, ring).unwrap()]).unwrap()
}

#[derive(Default)]
struct CorpusTally {
    words: usize,
    invariant: usize,
    uniqueness: usize,
    steps: usize,
    first: Option<String>,
}

/// Per word: u·w·v reproduces the matrix, both absorption orders give the same w, and
/// one random rho_step agrees with factorizing the extended word from scratch.
fn corpus_check(word: &GroupWord, rng: &mut ChaCha8Rng) -> Result<(bool, bool, bool)> {
    let n = word.n();
    let ring = word.ring();
    let m = word.matrix();
    let fac = factorize(word)?;
    let rev = factorize_rev(word)?;
    let invariant = fac.represents(&m) && rev.represents(&m);
    let unique = fac.w() == rev.w();
    let a = AffineRoot::simple(n, rng.gen_range(0..n));
    let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
    let (stepped, _) = fac.rho_step(&a, side)?;
    let sw = simple_step_word(ring, n, &a, side);
    let extended = match side {
        Side::Left => sw.concat(word),
        Side::Right => word.concat(&sw),
    };
    let scratch = factorize(&extended)?;
    let step_ok = stepped.represents(&extended.matrix()) && stepped.w() == scratch.w() && factorize_rev(&extended)?.w() == scratch.w();
    Ok((invariant, unique, step_ok))
}

/// `words` random words per (ring, n); rows for the factorization invariant, uniqueness of ρ
/// across absorption orders, and rho_step against re-factorization.
pub fn audit_corpus(rings: &[Ring], ns: &[usize], words: usize, max_len: usize, cap: i64, seed: u64) -> AuditReport {
    let names: Vec<String> = rings.iter().map(|r| r.describe()).collect();
    let mut rep = AuditReport::new("factorization corpus", seed)
        .config("rings", names.join("; "))
        .config("n", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","))
        .config("words", words)
        .config("max_len", max_len)
        .config("degree_cap", cap);
    for ring in rings {
        for &n in ns {
            let stream = format!("corpus/{}/{n}", ring.describe());
            let results: Vec<(u64, Result<(bool, bool, bool)>, String)> = (0..words as u64)
                .into_par_iter()
                .map(|idx| {
                    let mut rng = sample_rng(seed, &stream, idx);
                    let word = random_word(ring, n, max_len, cap, &mut rng);
                    (idx, corpus_check(&word, &mut rng), word.to_string())
                })
                .collect();
            let mut t = CorpusTally::default();
            for (idx, r, text) in results {
                t.words += 1;
                let (a, b, c) = r.unwrap_or((false, false, false));
                t.invariant += !a as usize;
                t.uniqueness += !b as usize;
                t.steps += !c as usize;
                if !(a && b && c) {
                    t.first.get_or_insert(format!("#{idx}: {text}"));
                }
            }
            let fam = format!("n={n}");
            for (branch, fails) in [("uwv=e", t.invariant), ("rho unique", t.uniqueness), ("rho_step", t.steps)] {
                let mut row = AuditRow::new(&fam, &format!("{branch} {}", short(ring)));
                row.samples = t.words;
                row.failures = fails;
                if fails > 0 {
                    row.first_failure = t.first.clone();
                }
                rep.push(row);
            }
        }
    }
    rep
}

fn short(ring: &Ring) -> String {
    ring.describe().split_whitespace().next().unwrap_or("").to_string()
}

/// ρ(u·e·v) = ρ(e) for random U-words u, v.
pub fn audit_double_coset(cfg: &AuditConfig) -> AuditReport {
    let (ring, n) = (&cfg.ring, cfg.n);
    let mut rep = cfg.report("double-coset invariance of rho");
    let row = run_row("rho(uev)", "-", cfg.samples, cfg.seed, |rng| {
        let e = random_word(ring, n, 8, cfg.degree_cap, rng);
        let len_u = rng.gen_range(1..=6);
        let u = random_u_word(ring, n, len_u, cfg.degree_cap, rng);
        let len_v = rng.gen_range(1..=6);
        let v = random_u_word(ring, n, len_v, cfg.degree_cap, rng);
        let base = factorize(&e)?;
        let sandwiched = factorize(&u.concat(&e).concat(&v))?;
        let ok = base.w() == sandwiched.w();
        Ok(Outcome::check(ok, || format!("e={e} u={u} v={v}")))
    });
    rep.push(row);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_displays_small() {
        for ring in [Ring::finite_field(3, 2, 1).unwrap(), Ring::hamilton()] {
            let cfg = AuditConfig::new(&ring, 2).samples(30).seed(2);
            let rep = audit_k(&cfg);
            assert!(rep.passed(), "{}", rep.render());
            assert_eq!(rep.rows.len(), 16);
        }
    }

    #[test]
    fn small_corpus_and_double_coset() {
        let rings = [Ring::finite_field(2, 2, 1).unwrap()];
        let rep = audit_corpus(&rings, &[2, 3], 40, 12, 2, 1);
        assert!(rep.passed(), "{}", rep.render());
        let rep = audit_double_coset(&AuditConfig::new(&rings[0], 3).samples(30));
        assert!(rep.passed(), "{}", rep.render());
    }
}
