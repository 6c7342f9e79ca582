//! Symbol groups P and Q as formal words in c(u, v), their images in D_τ^×, and the tame quotient.

pub mod audit;
pub mod tame;

use std::fmt;

pub use tame::{tame_symbol, TameValue};

use crate::error::{domain, Result, TwlError};
use crate::parse::Cursor;
use crate::ring::{Ring, Unit};
use crate::steinberg::torus::{Certificate, StExpr, TorusWord};

/// Which presentation a word lives in: P (n = 2) or Q (n ≥ 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    P,
    Q,
}

impl Presentation {
    /// Rank used when a word is sent to the Steinberg group by ζ₀ / ζ.
    pub fn steinberg_n(self) -> usize {
        match self {
            Presentation::P => 2,
            Presentation::Q => 3,
        }
    }
}

/// c(u, v)^{±1}.
#[derive(Clone, PartialEq, Eq)]
pub struct Symbol {
    pub u: Unit,
    pub v: Unit,
    pub inv: bool,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c({},{})", self.u, self.v)?;
        if self.inv {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolWord {
    ring: Ring,
    kind: Presentation,
    symbols: Vec<Symbol>,
}

impl fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("1");
        }
        for (idx, s) in self.symbols.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl SymbolWord {
    pub fn empty(ring: &Ring, kind: Presentation) -> SymbolWord {
        SymbolWord { ring: ring.clone(), kind, symbols: Vec::new() }
    }

    pub fn c(kind: Presentation, u: &Unit, v: &Unit) -> SymbolWord {
        SymbolWord { ring: u.ring().clone(), kind, symbols: vec![Symbol { u: u.clone(), v: v.clone(), inv: false }] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> Presentation {
        self.kind
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn concat(&self, other: &SymbolWord) -> SymbolWord {
        let mut out = self.clone();
        out.symbols.extend(other.symbols.iter().cloned());
        out
    }

    pub fn push(&mut self, u: &Unit, v: &Unit, inv: bool) {
        self.symbols.push(Symbol { u: u.clone(), v: v.clone(), inv });
    }

    pub fn append(&mut self, other: &SymbolWord) {
        self.symbols.extend(other.symbols.iter().cloned());
    }

    pub fn inverse(&self) -> SymbolWord {
        let symbols = self.symbols.iter().rev().map(|s| Symbol { inv: !s.inv, ..s.clone() }).collect();
        SymbolWord { ring: self.ring.clone(), kind: self.kind, symbols }
    }

    pub fn product<'a>(ring: &Ring, kind: Presentation, parts: impl IntoIterator<Item = &'a SymbolWord>) -> SymbolWord {
        parts.into_iter().fold(SymbolWord::empty(ring, kind), |acc, w| acc.concat(w))
    }

    /// ^x w: every symbol c(u, v) becomes c(^x u, ^x v).
    pub fn conj_by(&self, x: &Unit) -> SymbolWord {
        let symbols = self.symbols.iter().map(|s| Symbol { u: x.conj(&s.u), v: x.conj(&s.v), inv: s.inv }).collect();
        SymbolWord { ring: self.ring.clone(), kind: self.kind, symbols }
    }

    /// `c(u,v)` factors joined by `*`, each with optional `^-1`; `1` is the empty word.
    pub fn parse(ring: &Ring, kind: Presentation, text: &str) -> Result<SymbolWord> {
        let mut cur = Cursor::new(text);
        if cur.at_end() {
            return cur.err("empty word");
        }
        if cur.eat("1") {
            if !cur.at_end() {
                return cur.err("trailing input after the empty word");
            }
            return Ok(SymbolWord::empty(ring, kind));
        }
        let mut out = SymbolWord::empty(ring, kind);
        loop {
            let start = cur.pos;
            let name = cur.ident()?;
            if name != "c" {
                return Err(TwlError::Parse { pos: start, msg: format!("expected a symbol c(u,v), got `{name}`") });
            }
            let (u, v) = cur.paren_unit_pair(ring)?;
            let inv = cur.inverse_suffix()?;
            out.symbols.push(Symbol { u, v, inv });
            if !cur.separator()? {
                break;
            }
        }
        Ok(out)
    }
}

/// φ₀ / φ: Π [u_i, v_i]^{p_i}.
pub fn symbol_image(w: &SymbolWord) -> Unit {
    w.symbols.iter().fold(Unit::one(&w.ring), |acc, s| {
        let c = s.u.comm(&s.v);
        acc.mul(&if s.inv { c.inv() } else { c })
    })
}

/// Kernel membership per (#)/(##).
pub fn is_kernel_witness(w: &SymbolWord) -> bool {
    symbol_image(w).is_one()
}

/// Π tame(u_i, v_i)^{p_i}.
pub fn tame_image(w: &SymbolWord) -> Result<TameValue> {
    tame::require_tame(&w.ring)?;
    w.symbols.iter().try_fold(TameValue::one(&w.ring), |acc, s| {
        let t = tame_symbol(&s.u, &s.v)?;
        Ok(acc.mul(&if s.inv { t.inv() } else { t }))
    })
}

/// ζ₀ / ζ: c(u, v) ↦ ĉ(u, v) = ĉ_12(u, v), as a torus word in St(n).
pub fn zeta(w: &SymbolWord, n: usize) -> Result<TorusWord> {
    let mut out = TorusWord::empty(&w.ring, n);
    for s in &w.symbols {
        let c = TorusWord::c(n, 1, 2, &s.u, &s.v)?;
        out = out.concat(&if s.inv { c.inverse() } else { c });
    }
    Ok(out)
}

/// Every implemented image of a symbol word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCertificate {
    pub image: Unit,
    pub tame: Option<TameValue>,
    pub steinberg: Certificate,
}

impl SymbolCertificate {
    pub fn agrees(&self, other: &SymbolCertificate) -> bool {
        self.image == other.image
            && match (&self.tame, &other.tame) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
            && self.steinberg.agrees(&other.steinberg)
    }

    /// Which certificates were evaluated, for report notes.
    pub fn label(&self) -> &'static str {
        match (&self.tame, &self.steinberg.tame) {
            (Some(_), Some(_)) => "certificates: image+tame+zeta(phi+tame)",
            _ => "certificates: image+zeta(phi)",
        }
    }
}

pub fn certificate(w: &SymbolWord) -> Result<SymbolCertificate> {
    let tame = if w.ring.is_commutative_untwisted() { Some(tame_image(w)?) } else { None };
    let steinberg = StExpr::Torus(zeta(w, w.kind.steinberg_n())?).certificate()?;
    Ok(SymbolCertificate { image: symbol_image(w), tame, steinberg })
}

/// ξ·probe·ξ⁻¹ against ^{φ(ξ)}probe, which is probe itself since φ(ξ) = 1.
pub fn centrality_check(xi: &SymbolWord, probe: &SymbolWord) -> Result<bool> {
    if !is_kernel_witness(xi) {
        return domain(format!("{xi} has image {} and is not a kernel element", symbol_image(xi)));
    }
    let conj = SymbolWord::product(&xi.ring, xi.kind, [xi, probe, &xi.inverse()]);
    let law = probe.conj_by(&symbol_image(xi));
    Ok(certificate(&conj)?.agrees(&certificate(&law)?))
}
