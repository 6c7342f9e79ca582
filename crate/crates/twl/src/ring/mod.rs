//! Division rings D with an automorphism τ, and the twisted Laurent ring D_τ = D[t, t⁻¹].

mod field;
pub mod literal;
mod poly;
mod quat;
mod unit;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Deserialize;

use crate::error::{Result, TwlError};
use field::FieldTables;
use quat::{q4_scalar, q4_zero, Q4};
use quat::{QuatAlgebra, Rot};
pub use poly::Poly;
pub use unit::Unit;

/// An element of D. Finite-field elements are base-p digit codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    F(u32),
    Q(Box<Q4>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    FiniteField { p: u32, k: u32, tau_exponent: i64 },
    RationalQuaternion { a: BigRational, b: BigRational, q0: [BigRational; 4] },
}

#[derive(Debug)]
enum Backend {
    Field(FieldTables),
    Quat {
        alg: QuatAlgebra,
        /// τ^m for m = 0, 1, …; the whole cycle when τ has finite order.
        fwd: Vec<Rot>,
        /// τ^{−m} for m = 0, 1, … (unused when `period` is known).
        back: Vec<Rot>,
        period: Option<usize>,
    },
}

#[derive(Debug)]
struct Inner {
    spec: RingSpec,
    backend: Backend,
}

/// Shared handle to a coefficient ring D with its automorphism τ.
#[derive(Clone)]
pub struct Ring(Arc<Inner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.describe())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

const QPOW_CACHE: usize = 33;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let backend = match &spec {
            RingSpec::FiniteField { p, k, .. } => Backend::Field(FieldTables::new(*p, *k)?),
            RingSpec::RationalQuaternion { a, b, q0 } => {
                let alg = QuatAlgebra::new(a.clone(), b.clone());
                if !alg.is_definite() {
                    return Err(TwlError::Config(
                        "quaternion parameters must satisfy a < 0 and b < 0 (division algebra)".into(),
                    ));
                }
                let q0inv = alg
                    .inv(q0)
                    .ok_or_else(|| TwlError::Config("q0 must be invertible".into()))?;
                let step = alg.conj_rot(q0).expect("q0 is invertible");
                let step_back = alg.conj_rot(&q0inv).expect("q0 is invertible");
                let mut fwd = vec![Rot::identity()];
                let mut period = None;
                for m in 1..QPOW_CACHE {
                    let next = fwd[m - 1].compose(&step);
                    if next.is_identity() {
                        period = Some(m);
                        break;
                    }
                    fwd.push(next);
                }
                let mut back = vec![Rot::identity()];
                if period.is_none() {
                    for m in 1..QPOW_CACHE {
                        back.push(back[m - 1].compose(&step_back));
                    }
                }
                Backend::Quat { alg, fwd, back, period }
            }
        };
        Ok(Ring(Arc::new(Inner { spec, backend })))
    }

    pub fn finite_field(p: u32, k: u32, tau_exponent: i64) -> Result<Ring> {
        Ring::new(RingSpec::FiniteField { p, k, tau_exponent })
    }

    /// Hamilton quaternions over Q with τ = conjugation by 1 + i.
    pub fn hamilton() -> Ring {
        Ring::new(RingSpec::RationalQuaternion {
            a: rat(-1),
            b: rat(-1),
            q0: [rat(1), rat(1), rat(0), rat(0)],
        })
        .expect("Hamilton quaternions are a division ring")
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn describe(&self) -> String {
        match &self.0.spec {
            RingSpec::FiniteField { p, k, tau_exponent } => {
                format!("F_{} (p={p}, k={k}, tau=Frob^{tau_exponent})", p.pow(*k))
            }
            RingSpec::RationalQuaternion { a, b, q0 } => {
                format!("({a},{b})_Q, tau=conj by {}", self.show(&Elem::Q(Box::new(q0.clone()))))
            }
        }
    }

    pub(crate) fn field(&self) -> Option<&FieldTables> {
        match &self.0.backend {
            Backend::Field(f) => Some(f),
            _ => None,
        }
    }

    pub(crate) fn quat(&self) -> Option<&QuatAlgebra> {
        match &self.0.backend {
            Backend::Quat { alg, .. } => Some(alg),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        self.field().is_some()
    }

    /// D commutative and τ = id, so D_τ is the ordinary Laurent ring F_q[t, t⁻¹].
    pub fn is_commutative_untwisted(&self) -> bool {
        match &self.0.spec {
            RingSpec::FiniteField { k, tau_exponent, .. } => tau_exponent.rem_euclid(*k as i64) == 0,
            _ => false,
        }
    }

    /// Order of τ as an automorphism of D, when finite and known.
    pub fn tau_order(&self) -> u32 {
        match &self.0.spec {
            RingSpec::FiniteField { k, tau_exponent, .. } => {
                let g = num_integer::gcd(tau_exponent.rem_euclid(*k as i64) as u32, *k);
                if g == 0 { 1 } else { *k / g }
            }
            RingSpec::RationalQuaternion { .. } => match &self.0.backend {
                Backend::Quat { period: Some(p), .. } => *p as u32,
                _ => 0,
            },
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.0.backend {
            Backend::Field(_) => Elem::F(0),
            Backend::Quat { .. } => Elem::Q(Box::new(q4_zero())),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match &self.0.backend {
            Backend::Field(f) => Elem::F(f.from_int(n)),
            Backend::Quat { .. } => Elem::Q(Box::new(q4_scalar(rat(n)))),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        match &self.0.backend {
            Backend::Field(f) => {
                let p = BigInt::from(f.p);
                let num = (r.numer() % &p + &p) % &p;
                let den = (r.denom() % &p + &p) % &p;
                let num: u32 = num.try_into().expect("reduced mod p");
                let den: u32 = den.try_into().expect("reduced mod p");
                if den == 0 {
                    return Err(TwlError::Domain(format!("denominator {} vanishes mod {}", r.denom(), f.p)));
                }
                Ok(Elem::F(f.mul(num, f.inv(den))))
            }
            Backend::Quat { .. } => Ok(Elem::Q(Box::new(q4_scalar(r.clone())))),
        }
    }

    /// The generator symbol `g` of a finite field.
    pub fn generator(&self) -> Result<Elem> {
        self.field()
            .map(|f| Elem::F(f.generator()))
            .ok_or_else(|| TwlError::Domain("`g` is only defined for finite fields".into()))
    }

    /// Quaternion basis element 1, i, j or k (index 0..4).
    pub fn quat_basis(&self, idx: usize) -> Result<Elem> {
        if self.quat().is_none() {
            return Err(TwlError::Domain("i, j, k are only defined for quaternion rings".into()));
        }
        let mut v = q4_zero();
        v[idx] = rat(1);
        Ok(Elem::Q(Box::new(v)))
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::F(v) => *v == 0,
            Elem::Q(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        match x {
            Elem::F(v) => *v == 1,
            Elem::Q(v) => QuatAlgebra::is_one(v),
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (&self.0.backend, x, y) {
            (Backend::Field(f), Elem::F(a), Elem::F(b)) => Elem::F(f.add(*a, *b)),
            (Backend::Quat { alg, .. }, Elem::Q(a), Elem::Q(b)) => Elem::Q(Box::new(alg.add(a, b))),
            _ => panic!("element does not belong to {}", self.describe()),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (&self.0.backend, x) {
            (Backend::Field(f), Elem::F(a)) => Elem::F(f.neg(*a)),
            (Backend::Quat { alg, .. }, Elem::Q(a)) => Elem::Q(Box::new(alg.neg(a))),
            _ => panic!("element does not belong to {}", self.describe()),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (&self.0.backend, x, y) {
            (Backend::Field(f), Elem::F(a), Elem::F(b)) => Elem::F(f.mul(*a, *b)),
            (Backend::Quat { alg, .. }, Elem::Q(a), Elem::Q(b)) => Elem::Q(Box::new(alg.mul(a, b))),
            _ => panic!("element does not belong to {}", self.describe()),
        }
    }

    pub fn inv(&self, x: &Elem) -> Result<Elem> {
        if self.is_zero(x) {
            return Err(TwlError::Domain("zero has no inverse".into()));
        }
        Ok(match (&self.0.backend, x) {
            (Backend::Field(f), Elem::F(a)) => Elem::F(f.inv(*a)),
            (Backend::Quat { alg, .. }, Elem::Q(a)) => {
                Elem::Q(Box::new(alg.inv(a).expect("definite algebra")))
            }
            _ => panic!("element does not belong to {}", self.describe()),
        })
    }

    pub fn pow(&self, x: &Elem, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = self.one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// Group commutator xyx⁻¹y⁻¹ of nonzero elements.
    pub fn comm(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        Ok(self.mul(&xy, &self.inv(&yx)?))
    }

    /// τ^j(x).
    pub fn tau_pow(&self, x: &Elem, j: i64) -> Elem {
        match (&self.0.backend, &self.0.spec, x) {
            (Backend::Field(f), RingSpec::FiniteField { tau_exponent, .. }, Elem::F(a)) => {
                Elem::F(f.frobenius(*a, tau_exponent * j))
            }
            (Backend::Quat { fwd, back, period, .. }, _, Elem::Q(a)) => {
                if j == 0 {
                    return x.clone();
                }
                if let Some(p) = period {
                    return Elem::Q(Box::new(fwd[j.rem_euclid(*p as i64) as usize].apply(a)));
                }
                let m = j.unsigned_abs() as usize;
                let table = if j > 0 { fwd } else { back };
                if m < QPOW_CACHE {
                    return Elem::Q(Box::new(table[m].apply(a)));
                }
                let mut out = (**a).clone();
                let mut left = m;
                while left > 0 {
                    let s = left.min(QPOW_CACHE - 1);
                    out = table[s].apply(&out);
                    left -= s;
                }
                Elem::Q(Box::new(out))
            }
            _ => panic!("element does not belong to {}", self.describe()),
        }
    }

    /// Uniform element of F_q, or a quaternion with small integer (occasionally half-integer) components.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.backend {
            Backend::Field(f) => Elem::F(rng.gen_range(0..f.q)),
            Backend::Quat { .. } => {
                let mut v = q4_zero();
                for c in v.iter_mut() {
                    let n = rng.gen_range(-2i64..=2);
                    let d = if rng.gen_bool(0.15) { 2 } else { 1 };
                    *c = BigRational::new(BigInt::from(n), BigInt::from(d));
                }
                Elem::Q(Box::new(v))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random_elem(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// All elements of a finite field, in code order.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        self.field().map(|f| (0..f.q).map(Elem::F).collect())
    }

    pub fn show(&self, x: &Elem) -> String {
        literal::show_elem(self, x)
    }

    /// Reads a ring spec from TOML text.
    pub fn from_spec_text(text: &str) -> Result<Ring> {
        Ring::new(parse_spec(text)?)
    }

    pub fn from_spec_file(path: &std::path::Path) -> Result<Ring> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TwlError::Config(format!("cannot read ring spec {}: {e}", path.display())))?;
        Ring::from_spec_text(&text)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatLit {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: String,
    p: Option<u32>,
    k: Option<u32>,
    tau_exponent: Option<i64>,
    a: Option<RatLit>,
    b: Option<RatLit>,
    q0: Option<Vec<RatLit>>,
}

fn parse_rat(lit: &RatLit) -> Result<BigRational> {
    match lit {
        RatLit::Int(n) => Ok(rat(*n)),
        RatLit::Str(s) => literal::parse_rational(s.trim())
            .ok_or_else(|| TwlError::Config(format!("not a rational number: {s:?}"))),
    }
}

pub fn parse_spec(text: &str) -> Result<RingSpec> {
    let raw: RawSpec =
        toml::from_str(text).map_err(|e| TwlError::Config(format!("ring spec: {}", e.message())))?;
    let need = |name: &str| TwlError::Config(format!("ring spec: missing key `{name}`"));
    match raw.kind.as_str() {
        "finite_field" => Ok(RingSpec::FiniteField {
            p: raw.p.ok_or_else(|| need("p"))?,
            k: raw.k.unwrap_or(1),
            tau_exponent: raw.tau_exponent.unwrap_or(1),
        }),
        "rational_quaternion" => {
            let a = parse_rat(raw.a.as_ref().ok_or_else(|| need("a"))?)?;
            let b = parse_rat(raw.b.as_ref().ok_or_else(|| need("b"))?)?;
            let q0 = raw.q0.ok_or_else(|| need("q0"))?;
            if q0.len() != 4 {
                return Err(TwlError::Config("ring spec: q0 needs four rationals".into()));
            }
            let q0 = [parse_rat(&q0[0])?, parse_rat(&q0[1])?, parse_rat(&q0[2])?, parse_rat(&q0[3])?];
            Ok(RingSpec::RationalQuaternion { a, b, q0 })
        }
        other => Err(TwlError::Config(format!("unknown ring kind `{other}`"))),
    }
}

/// Canonical TOML text for a spec; parses back to the same spec.
pub fn spec_to_text(spec: &RingSpec) -> String {
    match spec {
        RingSpec::FiniteField { p, k, tau_exponent } => {
            format!("kind = \"finite_field\"\np = {p}\nk = {k}\ntau_exponent = {tau_exponent}\n")
        }
        RingSpec::RationalQuaternion { a, b, q0 } => format!(
            "kind = \"rational_quaternion\"\na = \"{a}\"\nb = \"{b}\"\nq0 = [\"{}\", \"{}\", \"{}\", \"{}\"]\n",
            q0[0], q0[1], q0[2], q0[3]
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> Ring {
        Ring::finite_field(2, 2, 1).unwrap()
    }

    #[test]
    fn f4_frobenius_examples() {
        let r = f4();
        let w = r.generator().unwrap();
        let w1 = r.add(&w, &r.one());
        assert_eq!(r.tau_pow(&w, 1), w1);
        assert_eq!(r.tau_pow(&w, 2), w);
        assert_eq!(r.tau_pow(&w, 0), w);
        assert_eq!(r.tau_order(), 2);
    }

    #[test]
    fn tau_is_a_ring_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ring in [Ring::finite_field(3, 2, 1).unwrap(), Ring::finite_field(2, 3, 2).unwrap(), Ring::hamilton()] {
            for _ in 0..200 {
                let a = ring.random_elem(&mut rng);
                let b = ring.random_elem(&mut rng);
                for j in -3..=3 {
                    assert_eq!(ring.tau_pow(&ring.mul(&a, &b), j), ring.mul(&ring.tau_pow(&a, j), &ring.tau_pow(&b, j)));
                    assert_eq!(ring.tau_pow(&ring.add(&a, &b), j), ring.add(&ring.tau_pow(&a, j), &ring.tau_pow(&b, j)));
                    assert_eq!(ring.tau_pow(&ring.tau_pow(&a, j), 2), ring.tau_pow(&a, j + 2));
                }
                assert_eq!(ring.tau_pow(&ring.tau_pow(&a, 1), -1), a);
            }
        }
    }

    #[test]
    fn finite_field_tau_order_divides_k() {
        let ring = Ring::finite_field(2, 4, 2).unwrap();
        assert_eq!(ring.tau_order(), 2);
        for x in ring.elements().unwrap() {
            assert_eq!(ring.tau_pow(&x, 2), x);
        }
    }

    #[test]
    fn nonzero_elements_have_two_sided_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for ring in [f4(), Ring::hamilton()] {
            for _ in 0..100 {
                let a = ring.random_nonzero(&mut rng);
                let ai = ring.inv(&a).unwrap();
                assert!(ring.is_one(&ring.mul(&a, &ai)));
                assert!(ring.is_one(&ring.mul(&ai, &a)));
            }
            assert!(ring.inv(&ring.zero()).is_err());
        }
    }

    #[test]
    fn hamilton_tau_has_order_four() {
        let ring = Ring::hamilton();
        let j = ring.quat_basis(2).unwrap();
        assert_ne!(ring.tau_pow(&j, 1), j);
        assert_ne!(ring.tau_pow(&j, 2), j);
        assert_eq!(ring.tau_pow(&j, 4), j);
        assert_eq!(ring.tau_order(), 4);
    }

    #[test]
    fn infinite_order_quaternion_tau_matches_direct_conjugation() {
        let spec = "kind = \"rational_quaternion\"\na = -1\nb = -3\nq0 = [1, 2, 0, 1]\n";
        let ring = Ring::from_spec_text(spec).unwrap();
        assert_eq!(ring.tau_order(), 0);
        let q0 = ring.add(&ring.mul(&ring.from_int(2), &ring.quat_basis(1).unwrap()), &ring.add(&ring.one(), &ring.quat_basis(3).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for m in [1i64, 5, 32, 33, 70] {
            let a = ring.random_elem(&mut rng);
            let qm = ring.pow(&q0, m).unwrap();
            let direct = ring.mul(&ring.mul(&qm, &a), &ring.inv(&qm).unwrap());
            assert_eq!(ring.tau_pow(&a, m), direct, "m={m}");
            assert_eq!(ring.tau_pow(&ring.tau_pow(&a, m), -m), a);
        }
    }

    #[test]
    fn spec_text_round_trip() {
        for text in [
            "kind = \"finite_field\"\np = 3\nk = 2\ntau_exponent = 1\n",
            "kind = \"rational_quaternion\"\na = -1\nb = \"-3/2\"\nq0 = [\"1\", \"1\", \"0\", 0]\n",
        ] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&spec_to_text(&spec)).unwrap(), spec);
        }
        assert!(Ring::from_spec_text("kind = \"rational_quaternion\"\na = 1\nb = -1\nq0 = [1,0,0,0]").is_err());
        assert!(Ring::from_spec_text("kind = \"nope\"").is_err());
    }
}
