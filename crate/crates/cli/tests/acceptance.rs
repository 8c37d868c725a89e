//! Acceptance suite: one PASS/FAIL line per criterion. Exact comparisons
//! throughout; time limits are wall-clock.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use wpbailey::bank::{find, Specialization};
use wpbailey::qkit::{theta_phi, theta_phi_product, theta_psi, theta_psi_product};
use wpbailey::verify::{random_spec, verify, verify_with, VerifyOptions};
use wpbailey::{CycNumber, Mono, PairKind, Status};
use wpbailey_cli::RunConfig;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Runs `id` at `order` for seeds `1..=seeds`; all must pass.
fn passes(id: &str, order: i64, seeds: u64) -> Outcome {
    let case = find(id).ok_or(format!("{id} missing"))?;
    for seed in 1..=seeds {
        let spec = random_spec(&case, seed).map_err(|e| format!("{id}: {e}"))?;
        let r = verify(&case, &spec, order);
        if r.status != Status::Pass {
            return Err(format!("{id} seed {seed}: {} {:?} {:?}", r.status, r.reason, r.mismatch));
        }
    }
    Ok(format!("{id}x{seeds}"))
}

fn all_pass(ids: &[&str], order: i64, seeds: u64) -> Outcome {
    let done: Result<Vec<_>, _> = ids.iter().map(|id| passes(id, order, seeds)).collect();
    Ok(done?.join(" "))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let detail = f()?;
    let took = t.elapsed();
    if took > limit {
        return Err(format!("{detail}; took {took:.1?}, limit {limit:?}"));
    }
    Ok(format!("{detail}; {took:.1?}"))
}

fn c1() -> Outcome {
    timed(Duration::from_secs(10), || passes("WP-DEF", 30, 3).map(|d| format!("{d}, six pairs, n <= 8")))
}

fn thm1_point() -> Specialization {
    let a = Mono::constant(CycNumber::from_ratio(2, 3)).unwrap();
    let k = Mono::constant(CycNumber::from_ratio(5, 7)).unwrap();
    Specialization::new(Some(PairKind::Trivial)).with("a", a).with("k", k)
}

fn c2() -> Outcome {
    let seeded = timed(Duration::from_secs(30), || all_pass(&["THM1", "COR-C1", "COR-C1-UNIT"], 30, 3))?;
    let r = verify(&find("THM1").unwrap(), &thm1_point(), 20);
    if r.status != Status::Pass {
        return Err(format!("THM1 at a=2/3, k=5/7: {} {:?}", r.status, r.mismatch));
    }
    Ok(format!("{seeded}; THM1 at a=2/3, k=5/7 trivial"))
}

fn c3() -> Outcome {
    all_pass(&["F3REP", "FRECIP", "FRECIP-A", "FSPEC-A", "FRECIP-B", "FSPEC-B"], 30, 5)
}

fn c4() -> Outcome {
    let mut d = passes("F-EQ-LAMBERT", 30, 3)?;
    let case = find("FG-LINK").unwrap();
    for pair in [PairKind::Trivial, PairKind::Unit] {
        for seed in 1..=3 {
            let spec = wpbailey::verify::random_spec_with_pair(&case, seed, Some(pair)).map_err(|e| e.to_string())?;
            let r = verify(&case, &spec, 30);
            if r.status != Status::Pass {
                return Err(format!("FG-LINK {pair} seed {seed}: {:?}", r.mismatch));
            }
        }
    }
    d.push_str(" FG-LINK trivial,unit x3");
    Ok(d)
}

/// Quadruples with `w^2 + x^2 + y^2 + z^2 = n`.
fn r4(n: i64) -> i64 {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut count = 0;
    for w in -r..=r {
        for x in -r..=r {
            for y in -r..=r {
                let rest = n - w * w - x * x - y * y;
                if rest < 0 {
                    continue;
                }
                let z = (rest as f64).sqrt().round() as i64;
                if z * z == rest {
                    count += if z == 0 { 1 } else { 2 };
                }
            }
        }
    }
    count
}

fn c5() -> Outcome {
    let phi4 = theta_phi(50).pow(4);
    for n in 0..=50 {
        let got = phi4.coeff(n).unwrap();
        if got != CycNumber::from_int(r4(n)) {
            return Err(format!("coefficient {n}: {got} vs r4 = {}", r4(n)));
        }
    }
    for (n, want) in [(1, 8), (2, 24), (3, 32), (5, 48)] {
        if r4(n) != want {
            return Err(format!("r4({n}) = {}", r4(n)));
        }
    }
    passes("PHI4", 50, 1).map(|d| format!("r4 n <= 50; {d} at order 50"))
}

fn c6() -> Outcome {
    all_pass(&["PSI4", "WAC"], 50, 1)
}

fn c7() -> Outcome {
    passes("CHI3", 30, 1).map(|d| format!("{d}, t-order 60"))
}

fn c8() -> Outcome {
    if !theta_psi(60).agrees_with(&theta_psi_product(60).map_err(|e| e.to_string())?) {
        return Err("psi sum != product".into());
    }
    if !theta_phi(60).agrees_with(&theta_phi_product(60).map_err(|e| e.to_string())?) {
        return Err("phi sum != product".into());
    }
    all_pass(&["AQ-LAMBERT", "PHI2-LAMBERT", "A2Q", "PSI26", "AQ-DIFF"], 40, 1).map(|d| format!("psi, phi to 60; {d} at 40"))
}

fn c9() -> Outcome {
    let ids = [
        "G-LAMBERT", "G-RECIP", "MIN1", "MIN2", "COR-RS", "COR-RS2-MZ", "COR-RS2-PR4", "WPEQ8", "WPEQ2N", "CHAIN", "LAMB1",
        "GPRIME", "SUMID", "PSI26", "PHI2-LAMBERT", "A2Q", "AQ-DIFF", "AQ-LAMBERT", "RATIO-INV",
    ];
    all_pass(&ids, 30, 3).map(|_| format!("{} cases x3 at order 30", ids.len()))
}

fn c10() -> Outcome {
    let case = find("THM1").unwrap();
    let spec = thm1_point();
    let clean = case.build(&spec, 25, 33).map_err(|e| e.to_string())?.0;
    // (1 + q^20) first changes the right side at 20 + its valuation
    let want = 20 + clean[0].rhs.valuation().ok_or("zero right side")?;
    let r = verify_with(&case, &spec, 25, VerifyOptions { inject_fault: Some(20) });
    let got = r.mismatch.as_ref().map(|m| m.exponent);
    if r.status != Status::Fail || got != Some(want) {
        return Err(format!("status {} at {got:?}, expected FAIL at {want}", r.status));
    }
    let out = Command::new(env!("CARGO_BIN_EXE_wpverify"))
        .args(["--identity", "THM1", "--order", "25", "--seeds", "1", "--inject-fault", "20"])
        .env_remove("WPVERIFY_ORDER")
        .output()
        .map_err(|e| e.to_string())?;
    match out.status.code() {
        Some(1) => Ok(format!("first mismatch at q^{want}, exit 1")),
        c => Err(format!("exit code {c:?}")),
    }
}

fn c11() -> Outcome {
    let suite = timed(Duration::from_secs(300), || {
        let reports = wpbailey_cli::run(&RunConfig::default()).map_err(|e| e.to_string())?;
        match reports.iter().find(|r| r.status != Status::Pass) {
            Some(r) => Err(format!("{} seed {}: {}", r.id, r.spec.seed, r.status)),
            None => Ok(format!("default suite {} runs", reports.len())),
        }
    })?;
    let thm1 = timed(Duration::from_secs(60), || passes("THM1", 100, 1).map(|_| "THM1 at order 100".to_string()))?;
    Ok(format!("{suite}; {thm1}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("WP-DEF relation for every pair", c1),
        ("reciprocity theorem and its corollaries", c2),
        ("f representations and reciprocity family", c3),
        ("F as Lambert series; F(k^2,k,q) = 0", c4),
        ("phi^4 and four-square counts", c5),
        ("psi^4(q^2) identities", c6),
        ("chi_0 identity over Q(zeta_12)", c7),
        ("theta cross-representations", c8),
        ("remaining identities", c9),
        ("fault injection", c10),
        ("performance", c11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
