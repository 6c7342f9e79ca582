//! Randomized certificate audits of the Steinberg relations and of the torus identities.

use rand_chacha::ChaCha8Rng;

use super::torus::{StExpr, TorusWord};
use super::{hat_w, hat_x, StWord};
use crate::error::{Result, TwlError};
use crate::linear::audit::Pattern;
use crate::report::{AuditReport, AuditRow};
use crate::ring::{Poly, Ring, Unit};
use crate::roots::FiniteRoot;
use crate::sample::{distinct_indices, random_poly, random_unit, AuditConfig, Outcome};

pub const ST_FAMILIES: [&str; 4] = ["ST1", "ST2", "ST2'", "Rhat6"];
pub const T_FAMILIES: [&str; 11] = ["T1", "T1'", "T2", "T2'", "T3", "T4", "T5", "T5'", "T6", "T7", "T8"];
pub const TT_FAMILIES: [&str; 10] = ["TT0", "TT1", "TT2", "TT3", "TT4", "TT4'", "TT5", "TT5'", "TT6", "TT7"];

/// Accepts `′` for `'` and `R̂6`/`R^6` for `Rhat6`.
pub fn canonical_family(name: &str) -> Option<&'static str> {
    let norm = name.replace('′', "'");
    let norm = match norm.as_str() {
        "R̂6" | "R^6" | "RHAT6" => "Rhat6",
        s => s,
    };
    ST_FAMILIES.iter().chain(&T_FAMILIES).chain(&TT_FAMILIES).find(|f| **f == norm).copied()
}

/// (branch label, least n at which it can be sampled).
fn branches(family: &str) -> Vec<(String, usize)> {
    let pats = |ps: &[Pattern]| ps.iter().map(|p| (p.label().to_string(), p.min_n())).collect();
    let eqs = |k: usize, min_n: usize| (1..=k).map(|e| (format!("eq{e}"), min_n)).collect();
    match family {
        "ST1" | "ST2'" => vec![("-".into(), 2)],
        "ST2" => pats(&[Pattern::JK, Pattern::IL, Pattern::Disjoint, Pattern::IK, Pattern::JL]),
        "Rhat6" => pats(&Pattern::ALL),
        "T3" | "T4" | "T5" | "T6" => eqs(2, 2),
        "T5'" => vec![("+".into(), 2), ("-".into(), 2)],
        "TT5" => eqs(3, 3),
        f if f.starts_with("TT") => vec![("-".into(), 3)],
        _ => vec![("-".into(), 2)],
    }
}

/// Two sides as printed, and optionally a corrected pair tried when the printed one fails.
struct Instance {
    printed: (StExpr, StExpr),
    corrected: Option<(StExpr, StExpr)>,
    detail: String,
}

fn tw(w: TorusWord) -> StExpr {
    StExpr::Torus(w)
}

fn sw(w: StWord) -> StExpr {
    StExpr::Word(w)
}

fn cat(ring: &Ring, n: usize, parts: &[TorusWord]) -> TorusWord {
    TorusWord::product(ring, n, parts)
}

/// A scalar s ∈ D^× with s ≠ 1, so that 1 − s is a unit too.
fn scalar_not_one(ring: &Ring, rng: &mut ChaCha8Rng) -> Result<Unit> {
    for _ in 0..200 {
        let s = ring.random_nonzero(rng);
        if !ring.is_one(&s) {
            return Unit::scalar(ring, s);
        }
    }
    Err(TwlError::Domain(format!("{} has no scalar other than 0 and 1", ring.describe())))
}

fn one_minus(u: &Unit) -> Result<Unit> {
    let r = u.ring();
    (&Poly::one(r) - &u.to_poly()).as_unit().ok_or_else(|| TwlError::Domain(format!("1 - ({u}) is not a unit")))
}

fn st_instance(family: &str, branch: &str, n: usize, ring: &Ring, cap: i64, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let f = random_poly(ring, rng, cap);
    let g = random_poly(ring, rng, cap);
    let u = random_unit(ring, rng, cap);
    let s = random_unit(ring, rng, cap);
    let x = |r: FiniteRoot, p: Poly| hat_x(ring, n, r.i, r.j, p);
    let w = |r: FiniteRoot, c: &Unit| hat_w(n, r.i, r.j, c);
    let h = |r: FiniteRoot, c: &Unit| TorusWord::h(n, r.i, r.j, c);
    let (ui, p) = (u.inv(), |c: &Unit| c.to_poly());
    let mut corrected = None;
    let (b, lhs, rhs, gam) = match family {
        "ST1" => {
            let ij = distinct_indices(n, 2, rng);
            let b = FiniteRoot::new(ij[0], ij[1])?;
            (b, sw(x(b, f.clone())?.concat(&x(b, g.clone())?)), sw(x(b, &f + &g)?), b)
        }
        "ST2'" => {
            let ij = distinct_indices(n, 2, rng);
            let b = FiniteRoot::new(ij[0], ij[1])?;
            let lhs = StWord::product(ring, n, &[w(b, &u)?, x(b, f.clone())?, w(b, &u.neg())?]);
            let rhs = x(b.neg(), -&(&(&p(&ui) * &f) * &p(&ui)))?;
            (b, sw(lhs), sw(rhs), b)
        }
        "ST2" => {
            let pat = Pattern::ALL.into_iter().find(|q| q.label() == branch).expect("known branch");
            let (b, c) = pat.sample(n, rng);
            let lhs = StWord::commutator(&x(b, f.clone())?, &x(c, g.clone())?);
            let rhs = match pat {
                Pattern::JK => x(b.sum(&c).expect("root"), &f * &g)?,
                Pattern::IL => x(b.sum(&c).expect("root"), -&(&g * &f))?,
                _ => StWord::empty(ring, n),
            };
            (b, sw(lhs), sw(rhs), c)
        }
        _ => {
            let pat = Pattern::ALL.into_iter().find(|q| q.label() == branch).expect("known branch");
            let (b, c) = pat.sample(n, rng);
            let lhs = StWord::product(ring, n, &[w(b, &u)?, h(c, &s)?.to_st(), w(b, &u)?.inverse()]);
            let sig = b.reflect(&c);
            let pair = |r: FiniteRoot, a: &Unit, d: &Unit| -> Result<TorusWord> { Ok(h(r, a)?.concat(&h(r, d)?.inverse())) };
            let rhs = match pat {
                Pattern::Disjoint => h(c, &s)?,
                Pattern::Same => {
                    let first = ui.mul(&s).mul(&ui).neg();
                    corrected = Some(pair(b.neg(), &first, &ui.mul(&ui).neg())?);
                    pair(b.neg(), &first, &u.mul(&u).neg())?
                }
                Pattern::Opposite => {
                    let first = u.mul(&s).mul(&u).neg();
                    corrected = Some(pair(b, &first, &u.mul(&u).neg())?);
                    pair(b, &first, &ui.mul(&ui).neg())?
                }
                Pattern::IK => pair(sig, &ui.mul(&s).neg(), &ui.neg())?,
                Pattern::IL => pair(sig, &s.mul(&u).neg(), &u.neg())?,
                Pattern::JK => pair(sig, &u.mul(&s), &u)?,
                Pattern::JL => pair(sig, &s.mul(&ui), &ui)?,
            };
            let corrected = corrected.map(|c| (sw(lhs.clone()), tw(c)));
            let detail = format!("beta={b} gamma={c} u={u} s={s}");
            return Ok(Instance { printed: (sw(lhs), tw(rhs)), corrected, detail });
        }
    };
    Ok(Instance { printed: (lhs, rhs), corrected: None, detail: format!("beta={b} gamma={gam} f={f} g={g} u={u}") })
}

fn t_instance(family: &str, branch: &str, n: usize, ring: &Ring, cap: i64, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let tt = family.starts_with("TT");
    let idx = distinct_indices(n, if tt { 3 } else { 2 }, rng);
    let (i, j) = (idx[0], idx[1]);
    let k = if tt { idx[2] } else { 0 };
    let mut ru = || random_unit(ring, rng, cap);
    let (u, v, w, x, y) = (ru(), ru(), ru(), ru(), ru());
    let h = |a: &Unit| TorusWord::h(n, i, j, a);
    let c = |a: &Unit, b: &Unit| TorusWord::c(n, i, j, a, b);
    let hk = |a: &Unit| TorusWord::h(n, i, k, a);
    let ck = |a: &Unit, b: &Unit| TorusWord::c(n, i, k, a, b);
    let one = TorusWord::empty(ring, n);
    let cc = |parts: &[TorusWord]| cat(ring, n, parts);
    let eq = branch.strip_prefix("eq").and_then(|e| e.parse::<usize>().ok()).unwrap_or(1);
    let mut corrected = None;
    let mut detail = format!("i={i} j={j} u={u} v={v} w={w} x={x} y={y}");
    let (lhs, rhs) = match family {
        "T1" => (cc(&[h(&u)?, h(&v)?]), cc(&[h(&u.mul(&v).mul(&u))?, h(&u.inv())?])),
        "T1'" => (cc(&[h(&u)?, h(&v)?]), cc(&[h(&v.inv())?, h(&v.mul(&u).mul(&v))?])),
        "T2" => {
            let (ui, vi) = (u.inv(), v.inv());
            (c(&u, &v)?, cc(&[h(&vi.mul(&ui))?.inverse(), h(&ui)?, h(&vi)?]))
        }
        "T2'" => {
            let (ui, vi) = (u.inv(), v.inv());
            (cc(&[h(&ui.mul(&vi))?.inverse(), h(&ui)?, h(&vi)?]), cc(&[h(&u)?, h(&v)?, h(&u.mul(&v))?.inverse()]))
        }
        "T3" => {
            let rhs = if eq == 1 { c(&u.mul(&v).mul(&u), &u.inv())? } else { c(&v.inv(), &v.mul(&u).mul(&v))? };
            (c(&u, &v)?, rhs)
        }
        "T4" => {
            let lhs = cc(&[c(&u, &v)?, c(&v.mul(&u), &w)?]);
            let rhs = if eq == 1 {
                cc(&[c(&u, &v.mul(&w))?, c(&v, &w)?])
            } else {
                cc(&[h(&u)?, c(&v, &w)?, h(&u)?.inverse(), c(&u, &w.mul(&v))?])
            };
            (lhs, rhs)
        }
        "T5" => {
            let cxy = c(&x, &y)?;
            let lhs = cc(&[cxy.clone(), h(&u)?, cxy.inverse()]);
            let rhs = if eq == 1 {
                let xy = x.comm(&y);
                cc(&[h(&xy.mul(&u))?, h(&xy)?.inverse()])
            } else {
                let yx = y.comm(&x);
                cc(&[h(&yx)?.inverse(), h(&u.mul(&yx))?])
            };
            (lhs, rhs)
        }
        "T5'" => {
            let (a, hu) = if branch == "+" { (u.clone(), h(&u)?) } else { (u.inv(), h(&u)?.inverse()) };
            (cc(&[hu.clone(), h(&v)?, hu.inverse()]), cc(&[h(&a.mul(&v).mul(&a))?, h(&a.mul(&a))?.inverse()]))
        }
        "T6" => {
            let cxy = c(&x, &y)?;
            let xy = x.comm(&y);
            let lhs = cc(&[cxy.clone(), c(&u, &v)?, cxy.inverse()]);
            let rhs = if eq == 1 {
                cc(&[c(&u, &xy)?.inverse(), c(&u, &xy.mul(&v))?])
            } else {
                cc(&[c(&xy.mul(&u), &v)?, c(&xy, &v)?.inverse()])
            };
            (lhs, rhs)
        }
        "T7" => {
            let s = scalar_not_one(ring, rng)?;
            detail = format!("i={i} j={j} u={s} v={v}");
            (c(&s, &v)?, c(&s, &v.mul(&one_minus(&s)?))?)
        }
        "T8" => (c(&u, &v)?, c(&u, &v.mul(&u).neg())?),
        "TT0" => (c(&u, &v)?, ck(&u, &v)?),
        "TT1" => (cc(&[h(&u)?, TorusWord::h(n, j, i, &u)?]), one),
        "TT2" => (cc(&[h(&u)?, TorusWord::h(n, k, i, &u)?, TorusWord::h(n, j, k, &u)?]), one),
        "TT3" => {
            let s = scalar_not_one(ring, rng)?;
            detail = format!("i={i} j={j} s={s}");
            (c(&s, &one_minus(&s)?)?, one)
        }
        "TT4" => (c(&u, &v)?, TorusWord::commutator(&h(&u)?, &hk(&v)?)),
        "TT4'" => (c(&u, &v)?.inverse(), c(&v, &u)?),
        "TT5" => {
            let mid = ck(&u, &v)?;
            let printed = cc(&[h(&x)?, mid.clone(), h(&u)?.inverse()]);
            let fixed = cc(&[h(&x)?, mid, h(&x)?.inverse()]);
            let rhs = match eq {
                1 => cc(&[ck(&u, &x)?.inverse(), ck(&u, &x.mul(&v))?]),
                2 => cc(&[ck(&x.mul(&u), &v)?, ck(&x, &v)?.inverse()]),
                _ => ck(&x.conj(&u), &x.conj(&v))?,
            };
            corrected = Some((tw(fixed), tw(rhs.clone())));
            detail = format!("i={i} j={j} k={k} u={u} v={v} x={x}");
            (printed, rhs)
        }
        "TT5'" => (c(&u, &v.mul(&w))?, cc(&[c(&u.mul(&v), &w)?, c(&w.mul(&u), &v)?])),
        "TT6" => (c(&u.mul(&v), &w)?, cc(&[c(&u.conj(&v), &u.conj(&w))?, c(&u, &w)?])),
        "TT7" => (c(&u, &v.mul(&w))?, cc(&[c(&u, &v)?, c(&v.conj(&u), &v.conj(&w))?])),
        other => return Err(TwlError::Config(format!("unknown Steinberg family `{other}`"))),
    };
    Ok(Instance { printed: (tw(lhs), tw(rhs)), corrected, detail })
}

fn agree(pair: &(StExpr, StExpr)) -> Result<bool> {
    Ok(pair.0.certificate()?.agrees(&pair.1.certificate()?))
}

/// Rows for one family at `cfg.n`.
pub fn audit_family(family: &str, cfg: &AuditConfig) -> Result<Vec<AuditRow>> {
    let fam = canonical_family(family).ok_or_else(|| TwlError::Config(format!("unknown Steinberg family `{family}`")))?;
    let n = cfg.n;
    let torus = !ST_FAMILIES.contains(&fam);
    let certs = if torus && cfg.ring.is_commutative_untwisted() { "certificates: phi+tame" } else { "certificates: phi" };
    let mut rows = Vec::new();
    for (branch, min_n) in branches(fam) {
        if n < min_n {
            rows.push(AuditRow::skipped(fam, &branch, &format!("needs n >= {min_n}")));
            continue;
        }
        let row = cfg.row(fam, &branch, |rng| {
            let inst = if torus {
                t_instance(fam, &branch, n, &cfg.ring, cfg.degree_cap, rng)?
            } else {
                st_instance(fam, &branch, n, &cfg.ring, cfg.degree_cap, rng)?
            };
            let printed = agree(&inst.printed)?;
            Ok(match inst.corrected {
                None => Outcome::check(printed, || inst.detail),
                Some(c) => Outcome::printed_or(printed, || agree(&c).unwrap_or(false), || inst.detail),
            })
        });
        rows.push(row.with_note(certs));
    }
    Ok(rows)
}

/// `which` is `ST`, `T`, `TT`, `all`, or one family name.
pub fn audit_steinberg(which: &str, cfg: &AuditConfig) -> Result<AuditReport> {
    let fams: Vec<&str> = match which {
        "ST" => ST_FAMILIES.to_vec(),
        "T" => T_FAMILIES.to_vec(),
        "TT" => TT_FAMILIES.to_vec(),
        "all" => ST_FAMILIES.iter().chain(&T_FAMILIES).chain(&TT_FAMILIES).copied().collect(),
        one => vec![canonical_family(one).ok_or_else(|| TwlError::Config(format!("unknown Steinberg family `{one}`")))?],
    };
    let mut rep = cfg.report(&format!("steinberg {which}"));
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

    fn run(ring: &Ring, n: usize, which: &str) -> AuditReport {
        let cfg = AuditConfig::new(ring, n).samples(30).seed(11).degree_cap(2);
        audit_steinberg(which, &cfg).unwrap()
    }

    #[test]
    fn families_pass_with_noted_corrections() {
        let f9 = Ring::finite_field(3, 2, 1).unwrap();
        let f5 = Ring::finite_field(5, 1, 0).unwrap();
        for ring in [&f9, &f5] {
            for (n, which) in [(2, "ST"), (3, "ST"), (2, "T"), (3, "TT")] {
                let rep = run(ring, n, which);
                assert!(rep.passed(), "{}", rep.render());
            }
        }
        let rep = run(&f9, 2, "Rhat6");
        for b in ["g=b", "g=-b"] {
            assert!(rep.rows.iter().find(|r| r.branch == b).unwrap().note.contains("printed form fails"));
        }
        let rep = run(&f5, 3, "TT5");
        assert!(rep.rows.iter().all(|r| r.note.contains("printed form fails") && r.note.contains("phi+tame")));
    }

    #[test]
    fn family_names() {
        assert_eq!(canonical_family("ST2′"), Some("ST2'"));
        assert_eq!(canonical_family("R̂6"), Some("Rhat6"));
        assert_eq!(canonical_family("T9"), None);
        let cfg = AuditConfig::new(&Ring::finite_field(5, 1, 0).unwrap(), 2).samples(1);
        assert!(audit_steinberg("T9", &cfg).is_err());
        let rep = audit_steinberg("TT1", &cfg).unwrap();
        assert!(rep.rows[0].note.starts_with("skipped"));
    }
}
