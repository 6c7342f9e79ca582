//! Command plumbing shared by the `twl` binary and the Python module: ring loading,
//! word parsing, audit dispatch and the text each command prints.

use std::path::{Path, PathBuf};

use crate::bruhat::{self, audit as bruhat_audit};
use crate::error::{Result, TwlError};
use crate::extension::audit as ext_audit;
use crate::linear::{audit as linear_audit, GroupWord};
use crate::report::AuditReport;
use crate::ring::Ring;
use crate::sample::AuditConfig;
use crate::steinberg::{self, audit as st_audit, StWord};
use crate::symbols::{self, audit as sym_audit, Presentation, SymbolWord};

/// Specs shipped in `rings/`; looked up by file name when `--ring` is not a file.
pub const BUNDLED: [(&str, &str); 6] = [
    ("f4.ring", include_str!("../../../rings/f4.ring")),
    ("f5.ring", include_str!("../../../rings/f5.ring")),
    ("f7.ring", include_str!("../../../rings/f7.ring")),
    ("f9.ring", include_str!("../../../rings/f9.ring")),
    ("f9-id.ring", include_str!("../../../rings/f9-id.ring")),
    ("hamilton.ring", include_str!("../../../rings/hamilton.ring")),
];

pub fn bundled_spec(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(file, _)| *file == name || file.trim_end_matches(".ring") == name).map(|(_, t)| *t)
}

/// A spec file path, or the name of a bundled spec (`f4.ring` or `f4`).
pub fn load_ring(arg: &str) -> Result<Ring> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ring::from_spec_file(path);
    }
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or(arg);
    match bundled_spec(name) {
        Some(text) => Ring::from_spec_text(text),
        None => Err(TwlError::Config(format!("no ring spec file `{arg}` and no bundled spec of that name"))),
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ring: Ring,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub degree_cap: i64,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(ring: Ring, n: usize) -> Result<RunConfig> {
        if n < 2 {
            return Err(TwlError::Config(format!("n must be at least 2, got {n}")));
        }
        Ok(RunConfig { ring, n, seed: 0, samples: 1000, degree_cap: 3, output: None })
    }

    pub fn audit_config(&self) -> AuditConfig {
        AuditConfig::new(&self.ring, self.n).samples(self.samples).seed(self.seed).degree_cap(self.degree_cap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Elementary,
    Steinberg,
    Symbol(Presentation),
}

#[derive(Clone, Debug)]
pub enum ParsedWord {
    Group(GroupWord),
    Steinberg(StWord),
    Symbol(SymbolWord),
}

impl std::fmt::Display for ParsedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParsedWord::Group(w) => write!(f, "{w}"),
            ParsedWord::Steinberg(w) => write!(f, "{w}"),
            ParsedWord::Symbol(w) => write!(f, "{w}"),
        }
    }
}

pub fn parse_word(ring: &Ring, n: usize, text: &str, alphabet: Alphabet) -> Result<ParsedWord> {
    Ok(match alphabet {
        Alphabet::Elementary => ParsedWord::Group(GroupWord::parse(ring, n, text)?),
        Alphabet::Steinberg => ParsedWord::Steinberg(StWord::parse(ring, n, text)?),
        Alphabet::Symbol(kind) => ParsedWord::Symbol(SymbolWord::parse(ring, kind, text)?),
    })
}

/// What a command prints, and whether its check passed (exit 0 vs 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn info(text: String) -> Output {
        Output { text, ok: true }
    }
}

impl From<AuditReport> for Output {
    fn from(rep: AuditReport) -> Output {
        Output { ok: rep.passed(), text: rep.render() }
    }
}

/// 0 pass, 2 failed check, 1 usage or configuration error.
pub fn exit_code(result: &Result<Output>) -> u8 {
    match result {
        Ok(o) if o.ok => 0,
        Ok(_) => 2,
        Err(_) => 1,
    }
}

/// `R`, `R1`..`R6`, `ST`, `T`, `TT` or a Steinberg family, `P`, `Q`, `all-symbols` or a
/// symbol family, `K`, `corpus` (words of length at most `max_len`) and `rho`.
pub fn audit(which: &str, max_len: usize, cfg: &AuditConfig) -> Result<AuditReport> {
    let upper = which.to_ascii_uppercase();
    if upper == "R" || linear_audit::FAMILIES.contains(&upper.as_str()) {
        return linear_audit::audit_r(&upper, cfg);
    }
    match upper.as_str() {
        "K" => return Ok(bruhat_audit::audit_k(cfg)),
        "CORPUS" => {
            let rings = std::slice::from_ref(&cfg.ring);
            return Ok(bruhat_audit::audit_corpus(rings, &[cfg.n], cfg.samples, max_len, cfg.degree_cap, cfg.seed));
        }
        "RHO" => return Ok(bruhat_audit::audit_double_coset(cfg)),
        "ST" | "T" | "TT" => return st_audit::audit_steinberg(&upper, cfg),
        "P" | "Q" => return sym_audit::audit_symbols(&upper, cfg),
        "ALL-SYMBOLS" => return sym_audit::audit_symbols("all", cfg),
        _ => {}
    }
    if st_audit::canonical_family(which).is_some() {
        return st_audit::audit_steinberg(which, cfg);
    }
    if let Some(fam) = sym_audit::canonical_family(which) {
        return sym_audit::audit_symbols(fam, cfg);
    }
    Err(TwlError::Config(format!("unknown audit `{which}`")))
}

pub fn eval(cfg: &RunConfig, word: &str, steinberg: bool) -> Result<Output> {
    let m = if steinberg {
        steinberg::st_phi(&StWord::parse(&cfg.ring, cfg.n, word)?)
    } else {
        GroupWord::parse(&cfg.ring, cfg.n, word)?.matrix()
    };
    Ok(Output::info(format!("{m}\n")))
}

/// u-word, monomial part, v-word, and whether u·w·v reproduces the word's matrix.
pub fn factor(cfg: &RunConfig, word: &str) -> Result<Output> {
    let w = GroupWord::parse(&cfg.ring, cfg.n, word)?;
    let f = bruhat::factorize(&w)?;
    let ok = f.represents(&w.matrix());
    Ok(Output { text: format!("{f}\nverified = {ok}\n"), ok })
}

pub fn rho(cfg: &RunConfig, word: &str) -> Result<Output> {
    let w = GroupWord::parse(&cfg.ring, cfg.n, word)?;
    Ok(Output::info(format!("{}\n", bruhat::rho(&w)?)))
}

pub fn symbol_eval(ring: &Ring, kind: Presentation, word: &str) -> Result<Output> {
    let w = SymbolWord::parse(ring, kind, word)?;
    Ok(Output::info(format!("image = {}\n", symbols::symbol_image(&w))))
}

/// Kernel membership is reported, not enforced: a word outside the kernel still exits 0.
pub fn symbol_witness(ring: &Ring, kind: Presentation, word: &str) -> Result<Output> {
    let w = SymbolWord::parse(ring, kind, word)?;
    let witness = symbols::is_kernel_witness(&w);
    Ok(Output::info(format!("witness = {witness}\nimage = {}\n", symbols::symbol_image(&w))))
}

/// Passes when the word is in the kernel and, where the tame symbol exists, has nontrivial
/// tame value, so it names a nontrivial central class.
pub fn k2_witness(ring: &Ring, kind: Presentation, word: &str) -> Result<Output> {
    let w = SymbolWord::parse(ring, kind, word)?;
    let witness = symbols::is_kernel_witness(&w);
    let mut text = format!("word = {w}\nwitness = {witness}\n");
    let ok = if ring.is_commutative_untwisted() {
        let tame = symbols::tame_image(&w)?;
        let nontrivial = witness && !tame.is_one();
        text += &format!("tame = {tame}\nnontrivial = {nontrivial}\n");
        nontrivial
    } else {
        text += "tame = unavailable (ring is not commutative and untwisted)\n";
        witness
    };
    Ok(Output { text, ok })
}

pub fn extension_check(cfg: &RunConfig, family: &str) -> Result<Output> {
    Ok(ext_audit::audit_extension(family, &cfg.audit_config())?.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Ring {
        load_ring("f5.ring").unwrap()
    }

    #[test]
    fn bundled_specs_all_parse() {
        for (name, _) in BUNDLED {
            load_ring(name).unwrap();
        }
        assert!(load_ring("f9").is_ok());
        assert!(matches!(load_ring("missing.ring"), Err(TwlError::Config(_))));
    }

    #[test]
    fn k2_witness_example() {
        let out = k2_witness(&f5(), Presentation::P, "c(t,2)").unwrap();
        assert!(out.ok);
        assert!(out.text.contains("witness = true\n"));
        assert!(out.text.contains("tame = 3\n"));
    }

    #[test]
    fn constant_symbols_have_trivial_tame_value() {
        let out = k2_witness(&f5(), Presentation::P, "c(2,3)").unwrap();
        assert!(out.text.contains("witness = true\ntame = 1\n"), "{}", out.text);
        assert!(!out.ok);
    }

    #[test]
    fn factor_example_verifies() {
        let cfg = RunConfig::new(f5(), 2).unwrap();
        let out = factor(&cfg, "x[2,1](1)").unwrap();
        assert!(out.ok);
        assert_eq!(out.text, "u = x[1,2](1)\nw = sigma=[2,1]; units=(1, 4)\nv = x[1,2](1)\nverified = true\n");
    }

    #[test]
    fn parse_word_examples() {
        let f4 = load_ring("f4").unwrap();
        match parse_word(&f4, 2, "x[1,2](g*t^1)", Alphabet::Elementary).unwrap() {
            ParsedWord::Group(w) => assert_eq!(w.len(), 1),
            _ => unreachable!(),
        }
        match parse_word(&f5(), 2, "c(t,2)*c(2,t)", Alphabet::Symbol(Presentation::P)).unwrap() {
            ParsedWord::Symbol(w) => assert_eq!(w.len(), 2),
            _ => unreachable!(),
        }
        let inv = parse_word(&f4, 2, "x[1,2](1)^-1", Alphabet::Elementary).unwrap();
        let direct = parse_word(&f4, 2, "x[1,2](-1)", Alphabet::Elementary).unwrap();
        assert_eq!(inv.to_string(), direct.to_string());
    }

    #[test]
    fn dispatch_names_and_exit_codes() {
        let cfg = RunConfig { samples: 5, ..RunConfig::new(f5(), 3).unwrap() }.audit_config();
        for which in ["R", "r2", "K", "rho", "ST", "T1", "Rhat6", "P", "q3", "Steinberg"] {
            assert!(audit(which, 6, &cfg).is_ok(), "{which}");
        }
        let bad = audit("nonsense", 6, &cfg);
        assert!(matches!(bad, Err(TwlError::Config(_))));
        assert_eq!(exit_code(&bad.map(Output::from)), 1);
        assert_eq!(exit_code(&Ok(Output { text: String::new(), ok: false })), 2);
    }
}
