//! Plain-text audit reports: config header, one line per (family, branch), seed footer.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub family: String,
    pub branch: String,
    pub samples: usize,
    pub failures: usize,
    pub note: String,
    pub first_failure: Option<String>,
    /// First instance where the printed form failed but the corrected form held.
    pub printed_mismatch: Option<String>,
}

impl AuditRow {
    pub fn new(family: &str, branch: &str) -> AuditRow {
        AuditRow {
            family: family.into(),
            branch: branch.into(),
            samples: 0,
            failures: 0,
            note: String::new(),
            first_failure: None,
            printed_mismatch: None,
        }
    }

    /// A branch that cannot occur for the chosen parameters.
    pub fn skipped(family: &str, branch: &str, why: &str) -> AuditRow {
        let mut r = AuditRow::new(family, branch);
        r.note = format!("skipped: {why}");
        r
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn with_note(mut self, note: impl Into<String>) -> AuditRow {
        let note = note.into();
        self.note = if self.note.is_empty() { note } else { format!("{}; {note}", self.note) };
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub title: String,
    pub config: Vec<(String, String)>,
    pub rows: Vec<AuditRow>,
    pub seed: u64,
}

impl AuditReport {
    pub fn new(title: impl Into<String>, seed: u64) -> AuditReport {
        AuditReport { title: title.into(), config: Vec::new(), rows: Vec::new(), seed }
    }

    pub fn config(mut self, key: &str, value: impl ToString) -> AuditReport {
        self.config.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: AuditRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.rows.extend(other.rows);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(AuditRow::passed)
    }

    pub fn total_samples(&self) -> usize {
        self.rows.iter().map(|r| r.samples).sum()
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().map(|r| r.failures).sum()
    }

    /// Deterministic rendering; the same inputs give the same bytes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "audit: {}", self.title);
        for (k, v) in &self.config {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let fw = self.rows.iter().map(|r| r.family.len()).chain([6]).max().unwrap();
        let bw = self.rows.iter().map(|r| r.branch.len()).chain([6]).max().unwrap();
        let _ = writeln!(out, "{:<fw$}  {:<bw$}  {:>7}  {:>8}  note", "family", "branch", "samples", "failures");
        for r in &self.rows {
            let line = format!("{:<fw$}  {:<bw$}  {:>7}  {:>8}  {}", r.family, r.branch, r.samples, r.failures, r.note);
            let _ = writeln!(out, "{}", line.trim_end());
        }
        for r in &self.rows {
            if let Some(f) = &r.first_failure {
                let _ = writeln!(out, "first failure {}/{}: {f}", r.family, r.branch);
            }
            if let Some(f) = &r.printed_mismatch {
                let _ = writeln!(out, "printed-form mismatch {}/{}: {f}", r.family, r.branch);
            }
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "result: {verdict} ({} samples, {} failures in {} rows)",
            self.total_samples(),
            self.failures(),
            self.rows.iter().filter(|r| !r.passed()).count()
        );
        let _ = writeln!(out, "seed: {}", self.seed);
        out
    }
}
