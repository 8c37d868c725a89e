use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use wpbailey::PairKind;
use wpbailey_cli::{exit_code, human_line, list_lines, run, summary, write_report, RunConfig};

/// Verify WP-Bailey pair identities by exact coefficient comparison.
#[derive(Debug, Parser)]
#[command(name = "wpverify", version)]
struct Args {
    /// Compare coefficients up to q^ORDER.
    #[arg(long, env = "WPVERIFY_ORDER", default_value_t = wpbailey_cli::DEFAULT_ORDER)]
    order: i64,

    /// Number of random specializations per identity.
    #[arg(long, default_value_t = 3)]
    seeds: u64,

    /// Identity ids, comma separated, or "all".
    #[arg(long, value_delimiter = ',', default_value = "all")]
    identity: Vec<String>,

    /// Use this WP-Bailey pair wherever a case accepts one.
    #[arg(long)]
    pair: Option<String>,

    /// Print the identity ids with their equation tags and exit.
    #[arg(long)]
    list: bool,

    /// Write newline-delimited JSON records here.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Stop at the first failure.
    #[arg(long)]
    fail_fast: bool,

    /// Worker threads (default: one per core).
    #[arg(long)]
    jobs: Option<usize>,

    /// Multiply every right side by 1 + q^EXP.
    #[arg(long, value_name = "EXP")]
    inject_fault: Option<i64>,

    /// Record 0 ms for every run, making reports byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

fn config(args: &Args) -> Result<RunConfig, String> {
    let identities = if args.identity.iter().any(|s| s.eq_ignore_ascii_case("all")) {
        Vec::new()
    } else {
        args.identity.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    };
    let pair = match &args.pair {
        Some(name) => Some(PairKind::from_name(name).ok_or_else(|| format!("unknown pair {name:?}"))?),
        None => None,
    };
    if args.jobs == Some(0) {
        return Err("--jobs must be at least 1".into());
    }
    Ok(RunConfig {
        order: args.order,
        seeds: args.seeds,
        identities,
        pair,
        report: args.report.clone(),
        fail_fast: args.fail_fast,
        jobs: args.jobs,
        inject_fault: args.inject_fault,
        timing: !args.no_timing,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        let mut out = io::stdout().lock();
        for line in list_lines() {
            if writeln!(out, "{line}").is_err() {
                break;
            }
        }
        return ExitCode::SUCCESS;
    }
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("wpverify: {e}");
            return ExitCode::from(2);
        }
    };
    let reports = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("wpverify: {e}");
            return ExitCode::from(2);
        }
    };
    // a closed stdout (e.g. piped into head) must not change the exit code
    let mut out = io::stdout().lock();
    for r in &reports {
        let _ = writeln!(out, "{}", human_line(r, cfg.timing));
    }
    let _ = writeln!(out, "{}", summary(&reports));
    if let Some(path) = &cfg.report {
        if let Err(e) = write_report(path, &reports) {
            eprintln!("wpverify: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(exit_code(&reports) as u8)
}
