//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines always reach stdout; exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use degen_core::document::OutputDocument;
use degen_core::families::{self, FamilyKind};
use degen_core::oracle::{bell_number_classical, partition_oracle};
use degen_core::series::{deg_exp_minus_one, deg_log, iterated_deg_exp, iterated_deg_log};
use degen_core::suite::{run_suite, CheckResult, SuiteConfig};
use degen_core::{triangles, umbral, Series};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suite(order: usize, ids: &[&str]) -> Result<Vec<CheckResult>, String> {
    let config = SuiteConfig {
        order,
        identity_filter: Some(ids.iter().map(|s| s.to_string()).collect()),
        ..SuiteConfig::default()
    };
    run_suite(&config).map_err(|e| e.to_string())
}

fn all_pass(results: &[CheckResult]) -> Outcome {
    match results.iter().find(|r| !r.passed()) {
        None => Ok(format!("{} checks", results.len())),
        Some(r) => Err(format!("{} failed: {:?}", r.id, r.witness)),
    }
}

fn identity_suite() -> Outcome {
    const REQUIRED: [&str; 21] = [
        "j2-from-s2deg", "s2deg-from-j2", "bell-against-s1deg", "j1-from-s1deg", "j1-first-column", "j2-differences", "s1deg-from-j1", "s1deg-first-column", "jindalrae-gf", "degbell-from-jindalrae", "jindalrae-from-degbell",
        "gaenari-gf", "falling-from-gaenari", "gaenari-numbers-vanish", "gaenari-numbers-closed", "j2-first-column", "s2deg-first-column", "deg-falling-via-gaenari", "deg-falling-via-jindalrae", "gaenari-jindalrae-agree", "stirling-orthogonality",
    ];
    let start = Instant::now();
    let results = run_suite(&SuiteConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for id in REQUIRED {
        if !results.iter().any(|r| r.id == id) {
            return Err(format!("{id} not registered"));
        }
    }
    all_pass(&results)?;
    if elapsed.as_secs() >= 60 {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("{} identities, order 12, symbolic λ, {elapsed:.1?}", results.len()))
}

fn classical_degeneration() -> Outcome {
    let results = suite(12, &["classical-s1", "classical-s2", "classical-bell"])?;
    all_pass(&results)?;
    if bell_number_classical(10) != 115975 {
        return Err("Bell(10) by enumeration".into());
    }
    Ok("S1, S2, Bell at λ=0 vs enumeration, n ≤ 10".into())
}

fn compositional_inversion() -> Outcome {
    let t = Series::identity(16);
    for (name, f) in [
        ("e_λ(t)-1", deg_exp_minus_one(16)),
        ("log_λ(1+t)", deg_log(16)),
        ("e_λ(e_λ(t)-1)-1", iterated_deg_exp(16)),
    ] {
        let inv = f.comp_inverse().map_err(|e| e.to_string())?;
        if f.compose(&inv).map_err(|e| e.to_string())? != t {
            return Err(format!("f(f̄(t)) != t for {name}"));
        }
    }
    let inv = iterated_deg_exp(12).comp_inverse().map_err(|e| e.to_string())?;
    if inv != iterated_deg_log(12) {
        return Err("inverse of e_λ(e_λ(t)-1)-1".into());
    }
    Ok("three inverses exact mod t^17, iterated pair at order 12".into())
}

fn e<T>(r: degen_core::Result<T>) -> Result<(), String> {
    r.map(|_| ()).map_err(|e| e.to_string())
}

fn dual_routes() -> Outcome {
    e(triangles::stirling1_deg(12))?;
    e(triangles::stirling2_deg(12))?;
    e(triangles::jstirling1(12))?;
    e(triangles::jstirling2(12))?;
    e(triangles::t_numbers(12))?;
    for kind in FamilyKind::ALL {
        e(families::family(kind, 12))?;
    }
    e(umbral::jindalrae_via_umbral(12))?;
    e(umbral::gaenari_via_umbral(12))?;
    all_pass(&suite(12, &["s1deg-routes", "s2deg-routes", "jindalrae-umbral", "gaenari-umbral", "gaenari-binomial-gf"])?)?;
    Ok("5 triangles, 4 families, umbral J and G at order 12".into())
}

fn umbral_layer() -> Outcome {
    let results = suite(10, &["umbral-group-law", "umbral-inverse-law", "umbral-powers", "umbral-substitution"])?;
    all_pass(&results)?;
    Ok("group law, inverse law, matrix powers m=2,3, substitution at order 10".into())
}

fn korobov_bernoulli() -> Outcome {
    let results = suite(10, &["korobov-slice", "bernoulli-slice", "korobov-square", "bernoulli-square"])?;
    all_pass(&results)?;
    Ok("m=1 slices and m=2 convolutions for 1 ≤ k ≤ n ≤ 10".into())
}

fn t_triple() -> Outcome {
    let results = suite(10, &["t-routes", "t-bell"])?;
    all_pass(&results)?;
    Ok("convolution = series = multinomial for n ≤ 8, T(n,1) = Bell(n) for n ≤ 10".into())
}

fn degen(args: &[&str]) -> Result<(Option<i32>, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_degen"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_conformance() -> Outcome {
    let (code, _) = degen(&["verify", "--order", "12"])?;
    if code != Some(0) {
        return Err(format!("verify --order 12 exited {code:?}"));
    }
    let (code, text) = degen(&["triangle", "--kind", "s2deg", "--order", "3", "--lambda", "0"])?;
    if code != Some(0) {
        return Err(format!("triangle exited {code:?}"));
    }
    let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    for e in doc["entries"].as_array().ok_or("no entries")? {
        let (n, k) = (e["n"].as_u64().unwrap() as usize, e["k"].as_u64().unwrap() as usize);
        if e["value"] != Value::String(partition_oracle(n, k).to_string()) {
            return Err(format!("entry ({n},{k}) = {}", e["value"]));
        }
    }
    let reparsed = OutputDocument::from_json(&text).map_err(|e| e.to_string())?;
    if reparsed.render_json() != text {
        return Err("JSON did not round-trip".into());
    }
    Ok("verify exits 0, λ=0 triangle matches partitions, JSON round-trips".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("identity suite", identity_suite),
        ("classical degeneration", classical_degeneration),
        ("compositional inversion", compositional_inversion),
        ("dual-route agreement", dual_routes),
        ("umbral layer", umbral_layer),
        ("Korobov and Bernoulli identities", korobov_bernoulli),
        ("T(n,k) triple agreement", t_triple),
        ("CLI conformance", cli_conformance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
