//! Seeded sampling shared by every audit: per-sample RNG streams and random ring data.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::AuditRow;
use crate::ring::{Poly, Ring, Unit};

/// FNV-1a, so stream names map to stable integers across toolchains.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent RNG for sample `idx` of `stream`; results do not depend on scheduling.
pub fn sample_rng(seed: u64, stream: &str, idx: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(seed ^ fnv1a(stream)) ^ idx))
}

/// Parameters shared by every randomized audit.
#[derive(Clone, Debug)]
pub struct AuditConfig {
    pub ring: Ring,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Largest |t-exponent| in sampled payloads.
    pub degree_cap: i64,
}

impl AuditConfig {
    pub fn new(ring: &Ring, n: usize) -> AuditConfig {
        AuditConfig { ring: ring.clone(), n, samples: 1000, seed: 0, degree_cap: 3 }
    }

    pub fn samples(mut self, samples: usize) -> AuditConfig {
        self.samples = samples;
        self
    }

    pub fn seed(mut self, seed: u64) -> AuditConfig {
        self.seed = seed;
        self
    }

    pub fn degree_cap(mut self, cap: i64) -> AuditConfig {
        self.degree_cap = cap;
        self
    }

    /// Empty report whose header echoes this configuration.
    pub fn report(&self, title: &str) -> crate::report::AuditReport {
        crate::report::AuditReport::new(title, self.seed)
            .config("ring", self.ring.describe())
            .config("n", self.n)
            .config("samples", self.samples)
            .config("degree_cap", self.degree_cap)
    }

    pub fn row<F>(&self, family: &str, branch: &str, f: F) -> AuditRow
    where
        F: Fn(&mut ChaCha8Rng) -> crate::Result<Outcome> + Sync,
    {
        run_row(family, branch, self.samples, self.seed, f)
    }

    /// Like `row`, also counting each sample's tag in `0..tags`.
    pub fn row_tagged<F>(&self, family: &str, branch: &str, tags: usize, f: F) -> (AuditRow, Vec<usize>)
    where
        F: Fn(&mut ChaCha8Rng) -> crate::Result<(Outcome, usize)> + Sync,
    {
        run_row_tagged(family, branch, self.samples, self.seed, tags, f)
    }
}

/// Result of one sampled instance.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub ok: bool,
    /// The printed form of the identity held (differs from `ok` only when a corrected form was used).
    pub printed_ok: bool,
    pub detail: String,
}

impl Outcome {
    pub fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
        Outcome { ok, printed_ok: ok, detail: if ok { String::new() } else { detail() } }
    }

    /// `printed` is tried first; `corrected` only when it fails.
    pub fn printed_or(printed: bool, corrected: impl FnOnce() -> bool, detail: impl FnOnce() -> String) -> Outcome {
        let ok = printed || corrected();
        Outcome { ok, printed_ok: printed, detail: if printed { String::new() } else { detail() } }
    }
}

/// Keeps report lines readable when an instance involves long symbol words.
fn clip(s: String) -> String {
    const MAX: usize = 480;
    match s.char_indices().nth(MAX) {
        Some((cut, _)) => format!("{}...", &s[..cut]),
        None => s,
    }
}

/// Runs `samples` instances in parallel and folds them, in index order, into one row.
pub fn run_row<F>(family: &str, branch: &str, samples: usize, seed: u64, f: F) -> AuditRow
where
    F: Fn(&mut ChaCha8Rng) -> crate::Result<Outcome> + Sync,
{
    run_row_tagged(family, branch, samples, seed, 1, |rng| f(rng).map(|o| (o, 0))).0
}

/// `run_row` plus a histogram of per-sample tags; errors are not tagged.
pub fn run_row_tagged<F>(family: &str, branch: &str, samples: usize, seed: u64, tags: usize, f: F) -> (AuditRow, Vec<usize>)
where
    F: Fn(&mut ChaCha8Rng) -> crate::Result<(Outcome, usize)> + Sync,
{
    let stream = format!("{family}/{branch}");
    let results: Vec<crate::Result<(Outcome, usize)>> = (0..samples as u64)
        .into_par_iter()
        .map(|idx| f(&mut sample_rng(seed, &stream, idx)))
        .collect();
    let mut counts = vec![0usize; tags];
    let outcomes: Vec<crate::Result<Outcome>> = results
        .into_iter()
        .map(|r| {
            r.map(|(o, tag)| {
                counts[tag.min(tags - 1)] += 1;
                o
            })
        })
        .collect();
    let mut row = AuditRow::new(family, branch);
    row.samples = samples;
    let mut printed_fail = 0usize;
    let mut first_printed = None;
    for (idx, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(o) => {
                if !o.printed_ok {
                    printed_fail += 1;
                    first_printed.get_or_insert_with(|| clip(format!("#{idx}: {}", o.detail)));
                }
                if !o.ok {
                    row.failures += 1;
                    row.first_failure.get_or_insert_with(|| clip(format!("#{idx}: {}", o.detail)));
                }
            }
            Err(e) => {
                row.failures += 1;
                row.first_failure.get_or_insert_with(|| clip(format!("#{idx}: error: {e}")));
            }
        }
    }
    if printed_fail > 0 {
        row.note = format!("printed form fails {printed_fail}/{samples}, corrected form checked");
        if row.failures == 0 {
            row.printed_mismatch = first_printed;
        }
    }
    (row, counts)
}

/// Random element of D_τ with at most three terms and exponents in [−cap, cap].
pub fn random_poly(ring: &Ring, rng: &mut impl Rng, cap: i64) -> Poly {
    let terms = rng.gen_range(0..=3);
    Poly::from_terms(ring, (0..terms).map(|_| (rng.gen_range(-cap..=cap), ring.random_elem(rng))))
}

pub fn random_unit(ring: &Ring, rng: &mut impl Rng, cap: i64) -> Unit {
    Unit::random(ring, rng, cap)
}

/// Degree-zero unit.
pub fn random_scalar(ring: &Ring, rng: &mut impl Rng) -> Unit {
    Unit::random(ring, rng, 0)
}

/// `k` distinct indices from 1..=n in random order.
pub fn distinct_indices(n: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    assert!(k <= n);
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    v.truncate(k);
    v
}
