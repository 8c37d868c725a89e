//! Driver behind `wpverify`: job expansion, parallel verification and the
//! newline-delimited JSON report.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use wpbailey::bank::{bank, IdentityCase, Specialization};
use wpbailey::verify::{default_pair, random_spec_with_pair, render_spec, verify_with, Status, VerificationReport, VerifyOptions};
use wpbailey::PairKind;

pub const DEFAULT_ORDER: i64 = 30;
pub const MIN_ORDER: i64 = 5;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub order: i64,
    pub seeds: u64,
    /// Case ids; empty means all.
    pub identities: Vec<String>,
    /// Force this pair on every case that accepts it.
    pub pair: Option<PairKind>,
    pub report: Option<PathBuf>,
    pub fail_fast: bool,
    pub jobs: Option<usize>,
    pub inject_fault: Option<i64>,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: DEFAULT_ORDER,
            seeds: 3,
            identities: Vec::new(),
            pair: None,
            report: None,
            fail_fast: false,
            jobs: None,
            inject_fault: None,
            timing: true,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("order must be at least {MIN_ORDER}, got {0}")]
    Order(i64),
    #[error("seeds must be at least 1")]
    Seeds,
    #[error("unknown identity {0:?} (see --list)")]
    UnknownIdentity(String),
    #[error("pair {pair} is not accepted by {id}")]
    PairNotAccepted { pair: PairKind, id: String },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.order < MIN_ORDER {
            return Err(ConfigError::Order(self.order));
        }
        if self.seeds < 1 {
            return Err(ConfigError::Seeds);
        }
        Ok(())
    }

    /// The selected cases in bank order.
    pub fn cases(&self) -> Result<Vec<IdentityCase>, ConfigError> {
        let all = bank();
        for id in &self.identities {
            if !all.iter().any(|c| c.id.eq_ignore_ascii_case(id)) {
                return Err(ConfigError::UnknownIdentity(id.clone()));
            }
        }
        let picked: Vec<IdentityCase> = all
            .into_iter()
            .filter(|c| self.identities.is_empty() || self.identities.iter().any(|id| c.id.eq_ignore_ascii_case(id)))
            .collect();
        if let (Some(pair), false) = (self.pair, self.identities.is_empty()) {
            if let Some(c) = picked.iter().find(|c| !c.pair_slots.contains(&pair)) {
                return Err(ConfigError::PairNotAccepted { pair, id: c.id.to_string() });
            }
        }
        Ok(picked)
    }
}

/// Runs every (case, seed) job. Reports come back in (bank order, seed)
/// order whatever the completion order.
pub fn run(config: &RunConfig) -> Result<Vec<VerificationReport>, ConfigError> {
    config.validate()?;
    let cases = config.cases()?;
    let jobs: Vec<(usize, u64)> = (0..cases.len()).flat_map(|i| (1..=config.seeds).map(move |s| (i, s))).collect();
    let stop = AtomicBool::new(false);
    let work = |&(i, seed): &(usize, u64)| -> Option<VerificationReport> {
        if stop.load(Ordering::SeqCst) {
            return None;
        }
        let r = run_one(&cases[i], seed, config);
        if config.fail_fast && r.status == Status::Fail {
            stop.store(true, Ordering::SeqCst);
        }
        Some(r)
    };
    let results: Vec<Option<VerificationReport>> = match config.jobs {
        Some(1) => jobs.iter().map(work).collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ConfigError::Pool(e.to_string()))?
            .install(|| jobs.par_iter().map(work).collect()),
        None => jobs.par_iter().map(work).collect(),
    };
    let mut reports: Vec<VerificationReport> = results.into_iter().flatten().collect();
    if config.fail_fast {
        // keep everything up to and including the first failure in job order
        if let Some(pos) = reports.iter().position(|r| r.status == Status::Fail) {
            reports.truncate(pos + 1);
        }
    }
    if !config.timing {
        for r in &mut reports {
            r.millis = 0;
        }
    }
    Ok(reports)
}

fn run_one(case: &IdentityCase, seed: u64, config: &RunConfig) -> VerificationReport {
    let pair = match config.pair {
        Some(p) if case.pair_slots.contains(&p) => Some(p),
        _ => default_pair(case, seed),
    };
    let opts = VerifyOptions { inject_fault: config.inject_fault };
    match random_spec_with_pair(case, seed, pair) {
        Ok(spec) => verify_with(case, &spec, config.order, opts),
        Err(e) => {
            let mut spec = Specialization::new(pair);
            spec.seed = seed;
            VerificationReport {
                id: case.id.to_string(),
                equation: case.equation.to_string(),
                spec,
                order: config.order,
                status: Status::Skipped,
                reason: Some(format!("spec-exhausted: {e}")),
                mismatch: None,
                term_counts: BTreeMap::new(),
                millis: 0,
            }
        }
    }
}

/// Process exit code for a finished run: 1 on any FAIL, else 0.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

/// One report as a JSON record.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportRecord<'a> {
    pub id: &'a str,
    pub equation: &'a str,
    pub spec: String,
    pub seed: u64,
    pub order: i64,
    pub status: &'static str,
    pub reason: Option<&'a str>,
    pub first_mismatch_exp: Option<i64>,
    pub lhs_coeff: Option<String>,
    pub rhs_coeff: Option<String>,
    pub term_counts: &'a BTreeMap<String, usize>,
    pub millis: u128,
    pub evidence: &'static str,
}

impl<'a> From<&'a VerificationReport> for ReportRecord<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        ReportRecord {
            id: &r.id,
            equation: &r.equation,
            spec: render_spec(&r.spec),
            seed: r.spec.seed,
            order: r.order,
            status: r.status.name(),
            reason: r.reason.as_deref(),
            first_mismatch_exp: r.mismatch.as_ref().map(|m| m.exponent),
            lhs_coeff: r.mismatch.as_ref().map(|m| m.lhs.to_string()),
            rhs_coeff: r.mismatch.as_ref().map(|m| m.rhs.to_string()),
            term_counts: &r.term_counts,
            millis: r.millis,
            evidence: "exact coefficients at a sampled specialization",
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("writing report {path}: {source}")]
pub struct ReportError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

/// Writes newline-delimited JSON, one record per report.
pub fn write_report(path: &Path, reports: &[VerificationReport]) -> Result<(), ReportError> {
    let wrap = |source| ReportError { path: path.to_path_buf(), source };
    let mut out = BufWriter::new(File::create(path).map_err(wrap)?);
    for r in reports {
        let line = serde_json::to_string(&ReportRecord::from(r)).expect("report serializes");
        writeln!(out, "{line}").map_err(wrap)?;
    }
    out.flush().map_err(wrap)
}

/// Human-readable line for the terminal.
pub fn human_line(r: &VerificationReport, timing: bool) -> String {
    let mut s = format!("{:7} {:13} seed={} order={}", r.status.name(), r.id, r.spec.seed, r.order);
    let spec = render_spec(&r.spec);
    if !spec.is_empty() {
        s.push_str(&format!(" [{spec}]"));
    }
    if let Some(m) = &r.mismatch {
        s.push_str(&format!(" {}: first mismatch at q^{}: lhs {} rhs {}", m.label, m.exponent, m.lhs, m.rhs));
    } else if let Some(reason) = &r.reason {
        s.push_str(&format!(" ({reason})"));
    }
    if timing {
        s.push_str(&format!(" {} ms", r.millis));
    }
    s
}

/// `--list` output: id, equation tag and accepted pairs.
pub fn list_lines() -> Vec<String> {
    bank()
        .iter()
        .map(|c| {
            let pairs: Vec<&str> = c.pair_slots.iter().map(|p| p.name()).collect();
            let pairs = if pairs.is_empty() { "-".to_string() } else { pairs.join(",") };
            format!("{:13} {:20} {}", c.id, c.equation, pairs)
        })
        .collect()
}

pub fn summary(reports: &[VerificationReport]) -> String {
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    format!(
        "{} runs: {} PASS, {} FAIL, {} SKIPPED",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    )
}
