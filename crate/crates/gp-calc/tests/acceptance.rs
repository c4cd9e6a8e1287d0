//! The twelve acceptance criteria, each run at its stated bound.

use std::time::Instant;

use gp_calc::verify::{all_checks, run_check, Config, Status, ACCEPTANCE};

const BOUNDS_SECONDS: [f64; 12] = [60.0, 1.0, 1.0, 1.0, 30.0, 10.0, 60.0, 120.0, 5.0, 120.0, 30.0, 120.0];

fn main() {
    let config = Config::from_env().unwrap();
    let checks = all_checks();
    let mut failed = Vec::new();
    for (n, ((name, ids), bound)) in ACCEPTANCE.iter().zip(BOUNDS_SECONDS).enumerate() {
        let start = Instant::now();
        let mut problems = Vec::new();
        for id in *ids {
            let check = checks.iter().find(|c| c.id == *id).unwrap();
            let result = run_check(check, &config);
            if result.status != Status::Pass {
                problems.push(format!("{id}: {} {}", result.status.as_str(), result.witness));
            }
        }
        let seconds = start.elapsed().as_secs_f64();
        if seconds >= bound {
            problems.push(format!("took {seconds:.2}s, bound {bound}s"));
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("AC{:<2} {verdict}  {name:<30} {seconds:>8.2}s / {bound}s", n + 1);
        for p in &problems {
            println!("      {p}");
        }
        if !problems.is_empty() {
            failed.push(n + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
