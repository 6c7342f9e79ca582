//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//! Sample counts and time budgets are the acceptance thresholds, not tuning knobs.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use twl::bruhat::audit::{audit_corpus, audit_double_coset, audit_k};
use twl::extension::audit::audit_extension;
use twl::linear::audit::audit_r;
use twl::report::AuditReport;
use twl::sample::AuditConfig;
use twl::steinberg::audit::audit_steinberg;
use twl::symbols::audit::audit_symbols;
use twl::symbols::{is_kernel_witness, symbol_image, tame_image, Presentation, SymbolWord};
use twl::{Result, Ring};

fn f4() -> Ring {
    Ring::finite_field(2, 2, 1).unwrap()
}
fn f9() -> Ring {
    Ring::finite_field(3, 2, 1).unwrap()
}
fn f5() -> Ring {
    Ring::finite_field(5, 1, 0).unwrap()
}
fn f7() -> Ring {
    Ring::finite_field(7, 1, 0).unwrap()
}

/// Accumulates reports for one criterion and the extra conditions it imposes.
struct Check {
    reports: Vec<AuditReport>,
    problems: Vec<String>,
    min_samples: usize,
}

impl Check {
    fn new(min_samples: usize) -> Check {
        Check { reports: Vec::new(), problems: Vec::new(), min_samples }
    }

    fn add(&mut self, rep: Result<AuditReport>) -> Option<AuditReport> {
        match rep {
            Ok(r) => {
                self.reports.push(r.clone());
                Some(r)
            }
            Err(e) => {
                self.problems.push(e.to_string());
                None
            }
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.problems.push(what.into());
        }
    }

    /// Every sampled row passed and met the instance floor; skipped rows are checked separately.
    fn finish(mut self, budget: Duration, elapsed: Duration) -> (bool, String) {
        let (mut rows, mut samples) = (0, 0);
        for rep in &self.reports {
            for r in rep.rows.iter().filter(|r| r.samples > 0) {
                rows += 1;
                samples += r.samples;
                if r.failures > 0 {
                    let detail = r.first_failure.clone().unwrap_or_default();
                    self.problems.push(format!("{}: {}/{} failed {} of {}: {detail}", rep.title, r.family, r.branch, r.failures, r.samples));
                }
                if r.samples < self.min_samples {
                    self.problems.push(format!("{}: {}/{} has only {} samples", rep.title, r.family, r.branch, r.samples));
                }
            }
        }
        if elapsed > budget {
            self.problems.push(format!("took {elapsed:.1?}, budget {budget:?}"));
        }
        let summary = format!("{rows} rows, {samples} instances, {elapsed:.1?} of {budget:?}");
        match self.problems.first() {
            None => (true, summary),
            Some(p) => (false, format!("{summary}; {} problem(s), first: {p}", self.problems.len())),
        }
    }
}

/// Branch labels that were sampled somewhere across `reports`, and those that were only skipped.
fn coverage(reports: &[&AuditReport]) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut seen = BTreeSet::new();
    let mut all = BTreeSet::new();
    for rep in reports {
        for r in &rep.rows {
            let key = format!("{}/{}", r.family, r.branch);
            if r.samples > 0 {
                seen.insert(key.clone());
            }
            all.insert(key);
        }
    }
    let missing = all.difference(&seen).cloned().collect();
    (seen, missing)
}

fn timed(budget_secs: u64, f: impl FnOnce() -> Check) -> (bool, String) {
    let start = Instant::now();
    let check = f();
    check.finish(Duration::from_secs(budget_secs), start.elapsed())
}

fn relations() -> (bool, String) {
    timed(60, || {
        let mut c = Check::new(1000);
        for (ring, ns) in [(f4(), vec![2, 3, 4]), (f9(), vec![2, 3, 4]), (Ring::hamilton(), vec![2, 3])] {
            let mut reps = Vec::new();
            for n in ns {
                let cfg = AuditConfig::new(&ring, n).samples(1000).seed(1);
                reps.extend(c.add(audit_r("R", &cfg)));
            }
            let (_, missing) = coverage(&reps.iter().collect::<Vec<_>>());
            // Quaternions stop at n = 3, so only the finite fields must reach every branch.
            if ring.is_field() {
                c.require(missing.is_empty(), format!("{}: branches never sampled: {missing:?}", ring.describe()));
            }
        }
        c
    })
}

fn steinberg() -> (bool, String) {
    timed(120, || {
        let mut c = Check::new(500);
        for ring in [f9(), f5()] {
            let mut reps = Vec::new();
            for (which, n) in [("ST", 4), ("T", 2), ("TT", 3)] {
                let cfg = AuditConfig::new(&ring, n).samples(500).seed(2);
                reps.extend(c.add(audit_steinberg(which, &cfg)));
            }
            let (_, missing) = coverage(&reps.iter().collect::<Vec<_>>());
            c.require(missing.is_empty(), format!("{}: skipped branches {missing:?}", ring.describe()));
        }
        c
    })
}

fn bruhat_machinery() -> (bool, String) {
    timed(180, || {
        let mut c = Check::new(500);
        for ring in [f4(), f9(), Ring::hamilton()] {
            let rep = audit_k(&AuditConfig::new(&ring, 2).samples(500).seed(3));
            c.require(rep.rows.len() == 16, format!("k displays: expected 16 rows, got {}", rep.rows.len()));
            c.add(Ok(rep));
        }
        let corpus = audit_corpus(&[f4(), f9()], &[2, 3], 2500, 12, 3, 3);
        let words: usize = corpus.rows.iter().filter(|r| r.branch.starts_with("rho_step")).map(|r| r.samples).sum();
        c.require(words >= 10_000, format!("corpus has {words} words"));
        c.add(Ok(corpus));
        c
    })
}

fn rho_invariance() -> (bool, String) {
    timed(120, || {
        let mut c = Check::new(2000);
        c.add(Ok(audit_double_coset(&AuditConfig::new(&f9(), 3).samples(2000).seed(4))));
        c.add(Ok(audit_double_coset(&AuditConfig::new(&f4(), 2).samples(2000).seed(4))));
        c
    })
}

fn symbols() -> (bool, String) {
    timed(60, || {
        let mut c = Check::new(200);
        for ring in [f5(), f7()] {
            let cfg = AuditConfig::new(&ring, 2).samples(1000).seed(5);
            if let Some(rep) = c.add(audit_symbols("all", &cfg)) {
                let thin = rep.rows.iter().any(|r| r.samples < 1000);
                let tame = rep.rows.iter().filter(|r| r.samples > 0).all(|r| r.note.contains("tame"));
                let desc = ring.describe();
                c.require(!thin, format!("{desc}: a family has fewer than 1000 instances"));
                c.require(tame, format!("{desc}: some rows ran without the tame certificate"));
            }
        }
        c.add(audit_symbols("all", &AuditConfig::new(&f9(), 2).samples(1000).seed(5)));
        c.add(audit_symbols("all", &AuditConfig::new(&Ring::hamilton(), 2).samples(200).seed(5)));
        c
    })
}

fn k2_witness() -> (bool, String) {
    timed(1, || {
        let mut c = Check::new(0);
        let ring = f5();
        match SymbolWord::parse(&ring, Presentation::P, "c(t,2)") {
            Ok(w) => {
                c.require(is_kernel_witness(&w), format!("c(t,2) has image {}", symbol_image(&w)));
                let half = ring.inv(&ring.from_int(2)).unwrap();
                match tame_image(&w) {
                    Ok(t) => {
                        c.require(*t.value() == half && *t.value() == ring.from_int(3), format!("tame value {t}, expected 3"));
                        c.require(!t.is_one(), "tame value is trivial");
                    }
                    Err(e) => c.require(false, e.to_string()),
                }
            }
            Err(e) => c.require(false, e.to_string()),
        }
        c
    })
}

/// "case 1: a, case 2: b, case 3: c" from a row note.
fn case_counts(note: &str) -> [usize; 3] {
    let mut out = [0; 3];
    for part in note.split(',') {
        let mut it = part.trim().trim_start_matches("case ").split(": ");
        if let (Some(k), Some(v)) = (it.next(), it.next()) {
            if let (Ok(k), Ok(v)) = (k.parse::<usize>(), v.parse::<usize>()) {
                if (1..=3).contains(&k) {
                    out[k - 1] += v;
                }
            }
        }
    }
    out
}

fn commutation() -> (bool, String) {
    timed(300, || {
        let mut c = Check::new(50);
        let mut triples = 0;
        let mut cases = [0; 3];
        for (n, samples) in [(2, 200), (3, 50)] {
            if let Some(rep) = c.add(audit_extension("commute", &AuditConfig::new(&f9(), n).samples(samples).seed(7))) {
                triples += rep.total_samples();
                for r in rep.rows.iter().filter(|r| r.branch.starts_with("nu-nu*")) {
                    let k = case_counts(&r.note);
                    (0..3).for_each(|i| cases[i] += k[i]);
                }
                if n == 2 {
                    let engineered = |b: &str| rep.rows.iter().find(|r| r.branch == b).map(|r| case_counts(&r.note));
                    c.require(engineered("nu-nu* diagonal") == Some([0, samples, 0]), "engineered diagonal inputs did not all land in case 2");
                    c.require(engineered("nu-nu* anti-diagonal") == Some([0, 0, samples]), "engineered anti-diagonal inputs did not all land in case 3");
                }
            }
        }
        c.require(triples >= 2000, format!("only {triples} triples"));
        c.require(cases.iter().all(|&k| k > 0), format!("case coverage {cases:?}"));
        c
    })
}

fn case3_identity() -> (bool, String) {
    timed(120, || {
        let mut c = Check::new(500);
        c.add(audit_extension("case3", &AuditConfig::new(&f9(), 2).samples(500).seed(8)));
        c
    })
}

fn transitivity_and_centrality() -> (bool, String) {
    timed(120, || {
        let mut c = Check::new(200);
        for ring in [f9(), f5()] {
            for family in ["transitive", "central"] {
                c.add(audit_extension(family, &AuditConfig::new(&ring, 2).samples(200).seed(9)));
            }
        }
        c
    })
}

fn determinism() -> (bool, String) {
    timed(60, || {
        let mut c = Check::new(0);
        let runs: Vec<(&str, Box<dyn Fn() -> Result<AuditReport>>)> = vec![
            ("R", Box::new(|| audit_r("R", &AuditConfig::new(&f4(), 3).samples(200).seed(7)))),
            ("TT", Box::new(|| audit_steinberg("TT", &AuditConfig::new(&f9(), 3).samples(100).seed(7)))),
            ("P", Box::new(|| audit_symbols("P", &AuditConfig::new(&f5(), 2).samples(200).seed(7)))),
            ("corpus", Box::new(|| Ok(audit_corpus(&[f9()], &[3], 300, 12, 3, 7)))),
            ("extension", Box::new(|| audit_extension("all", &AuditConfig::new(&f9(), 2).samples(30).seed(7)))),
        ];
        for (name, run) in runs {
            match (run(), run()) {
                (Ok(a), Ok(b)) => c.require(a.render() == b.render(), format!("{name}: reports differ")),
                (Err(e), _) | (_, Err(e)) => c.require(false, format!("{name}: {e}")),
            }
        }
        c
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> (bool, String)); 10] = [
        ("relation audits R1-R6", relations),
        ("Steinberg relation certificates", steinberg),
        ("step displays and factorization corpus", bruhat_machinery),
        ("rho on U-double cosets", rho_invariance),
        ("symbol relations and tame values", symbols),
        ("nontrivial K2 witness c(t,2) over F5", k2_witness),
        ("extension commutation, all three cases", commutation),
        ("case-3 symbol identity over F9", case3_identity),
        ("simple transitivity and centrality", transitivity_and_centrality),
        ("byte-identical reports under a fixed seed", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        failed += !ok as usize;
        println!("criterion {:>2} {}: {name} ({detail})", i + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
