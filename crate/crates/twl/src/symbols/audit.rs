//! Certificate audits of the defining relations of P and Q.

use rand_chacha::ChaCha8Rng;

use super::{certificate, Presentation, SymbolWord};
use crate::error::{Result, TwlError};
use crate::report::{AuditReport, AuditRow};
use crate::ring::{Poly, Ring, Unit};
use crate::sample::{random_unit, AuditConfig, Outcome};

pub const P_FAMILIES: [&str; 6] = ["P1", "P2", "P3", "P4", "P5", "P5'"];
pub const Q_FAMILIES: [&str; 4] = ["Q1", "Q2", "Q3", "Q4"];
pub const STEINBERG: &str = "Steinberg";

pub fn canonical_family(name: &str) -> Option<&'static str> {
    let norm = name.replace('′', "'");
    P_FAMILIES.iter().chain(&Q_FAMILIES).chain(&[STEINBERG]).find(|f| f.eq_ignore_ascii_case(&norm)).copied()
}

fn branches(family: &str) -> Vec<&'static str> {
    match family {
        "P4" | "Q3" => vec!["1-u unit", "s in D^x"],
        "Q4" => vec!["direct", "Q1 expansion", "Q2 expansion"],
        STEINBERG => vec!["P", "Q"],
        _ => vec!["-"],
    }
}

fn one_minus(u: &Unit) -> Option<Unit> {
    (&Poly::one(u.ring()) - &u.to_poly()).as_unit()
}

/// u with 1 − u a unit: a random unit of degree up to `cap`, rejected until it qualifies.
fn unit_with_unit_complement(ring: &Ring, rng: &mut ChaCha8Rng, cap: i64, scalar: bool) -> Result<(Unit, Unit)> {
    for _ in 0..10_000 {
        let u = random_unit(ring, rng, if scalar { 0 } else { cap });
        if let Some(c) = one_minus(&u) {
            return Ok((u, c));
        }
    }
    Err(TwlError::Domain(format!("no u with 1 - u a unit found in {}", ring.describe())))
}

/// Sides as printed, plus a corrected right side tried when the printed one fails.
struct Instance {
    lhs: SymbolWord,
    rhs: SymbolWord,
    corrected: Option<SymbolWord>,
    detail: String,
}

fn instance(family: &str, branch: &str, ring: &Ring, cap: i64, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let kind = match family {
        STEINBERG if branch == "Q" => Presentation::Q,
        STEINBERG => Presentation::P,
        f if f.starts_with('Q') => Presentation::Q,
        _ => Presentation::P,
    };
    let mut ru = || random_unit(ring, rng, cap);
    let (u, v, w, x, y) = (ru(), ru(), ru(), ru(), ru());
    let c = |a: &Unit, b: &Unit| SymbolWord::c(kind, a, b);
    let cat = |parts: &[SymbolWord]| SymbolWord::product(ring, kind, parts);
    let one = SymbolWord::empty(ring, kind);
    let mut detail = format!("u={u} v={v} w={w} x={x} y={y}");
    let mut corrected = None;
    let (lhs, rhs) = match family {
        "P1" => (cat(&[c(&u, &v), c(&v.mul(&u), &w)]), cat(&[c(&u, &v.mul(&w)), c(&v, &w)])),
        "P2" => (c(&u, &v), c(&u.mul(&v).mul(&u), &u.inv())),
        "P3" => {
            let xy = x.comm(&y);
            (cat(&[c(&x, &y), c(&u, &v), c(&x, &y).inverse()]), cat(&[c(&xy.mul(&u), &v), c(&v, &xy)]))
        }
        "P4" | "Q3" | STEINBERG => {
            let (s, cs) = unit_with_unit_complement(ring, rng, cap, branch != "1-u unit")?;
            detail = format!("u={s} v={v}");
            if family == "P4" {
                (c(&s, &v), c(&s, &v.mul(&cs)))
            } else {
                (c(&s, &cs), one)
            }
        }
        "P5" => (c(&u, &v), c(&u, &v.mul(&u).neg())),
        "P5'" => (c(&u, &v), c(&u.mul(&v).neg(), &v)),
        "Q1" => (c(&u.mul(&v), &w), cat(&[c(&u.conj(&v), &u.conj(&w)), c(&u, &w)])),
        "Q2" => (c(&u, &v.mul(&w)), cat(&[c(&u, &v), c(&v.conj(&u), &v.conj(&w))])),
        "Q4" => {
            // a = x, b = y in the expansions of c(ua, vb).
            let (a, b) = (&x, &y);
            let (uv, vu) = (u.mul(&v), v.mul(&u));
            match branch {
                "direct" => {
                    let uvc = u.comm(&v);
                    (cat(&[c(&u, &v), c(&x, &y)]), cat(&[c(&uvc.conj(&x), &uvc.conj(&y)), c(&u, &v)]))
                }
                "Q1 expansion" => {
                    let tail = [c(&uv.conj(a), &uv.conj(b)), c(&u, &v), c(&v.conj(&u), &v.conj(b))];
                    let fixed = [vec![c(&u.conj(a), &u.conj(&v))], tail.to_vec()].concat();
                    corrected = Some(cat(&fixed));
                    let printed = [vec![c(&u.conj(a), &u.conj(b))], tail.to_vec()].concat();
                    (c(&u.mul(a), &v.mul(b)), cat(&printed))
                }
                _ => (
                    c(&u.mul(a), &v.mul(b)),
                    cat(&[c(&u.conj(a), &u.conj(&v)), c(&u, &v), c(&vu.conj(a), &vu.conj(b)), c(&v.conj(&u), &v.conj(b))]),
                ),
            }
        }
        other => return Err(TwlError::Config(format!("unknown symbol family `{other}`"))),
    };
    Ok(Instance { lhs, rhs, corrected, detail })
}

pub fn audit_family(family: &str, cfg: &AuditConfig) -> Result<Vec<AuditRow>> {
    let fam = canonical_family(family).ok_or_else(|| TwlError::Config(format!("unknown symbol family `{family}`")))?;
    let label = if cfg.ring.is_commutative_untwisted() {
        "certificates: image+tame+zeta(phi+tame)"
    } else {
        "certificates: image+zeta(phi)"
    };
    let mut rows = Vec::new();
    for branch in branches(fam) {
        let row = cfg.row(fam, branch, |rng| {
            let Instance { lhs, rhs, corrected, detail } = instance(fam, branch, &cfg.ring, cfg.degree_cap, rng)?;
            let left = certificate(&lhs)?;
            let ok = left.agrees(&certificate(&rhs)?);
            let detail = || format!("{detail}: {lhs} vs {rhs}");
            Ok(match corrected {
                None => Outcome::check(ok, detail),
                Some(c) => Outcome::printed_or(ok, || certificate(&c).is_ok_and(|cc| left.agrees(&cc)), detail),
            })
        });
        rows.push(row.with_note(label));
    }
    Ok(rows)
}

/// `which` is `P`, `Q`, `all`, or one family.
pub fn audit_symbols(which: &str, cfg: &AuditConfig) -> Result<AuditReport> {
    let fams: Vec<&str> = match which {
        "P" => P_FAMILIES.to_vec(),
        "Q" => Q_FAMILIES.to_vec(),
        "all" => P_FAMILIES.iter().chain(&Q_FAMILIES).chain(&[STEINBERG]).copied().collect(),
        one => vec![canonical_family(one).ok_or_else(|| TwlError::Config(format!("unknown symbol family `{one}`")))?],
    };
    let mut rep = cfg.report(&format!("symbols {which}"));
    for fam in fams {
        for row in audit_family(fam, cfg)? {
            rep.push(row);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_families_agree() {
        for ring in [Ring::finite_field(3, 2, 1).unwrap(), Ring::finite_field(5, 1, 0).unwrap(), Ring::hamilton()] {
            let cfg = AuditConfig::new(&ring, 2).samples(20).seed(9).degree_cap(2);
            let rep = audit_symbols("all", &cfg).unwrap();
            assert!(rep.passed(), "{}", rep.render());
            assert_eq!(rep.rows.len(), 16);
            if !ring.is_commutative_untwisted() {
                let q4 = rep.rows.iter().find(|r| r.branch == "Q1 expansion").unwrap();
                assert!(q4.note.contains("printed form fails"), "{}", q4.note);
            }
        }
    }

    #[test]
    fn names() {
        assert_eq!(canonical_family("p5′"), Some("P5'"));
        assert_eq!(canonical_family("steinberg"), Some("Steinberg"));
        assert!(canonical_family("Q5").is_none());
    }
}
