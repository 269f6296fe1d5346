//! JSON job runner and named verification suites on top of `bethe_core`.

pub mod ops;
pub mod report;
pub mod suites;

use std::time::Instant;

use serde_json::json;

pub use report::{Check, CliError, CliResult, Job, Report, Status, SCHEMA};
pub use suites::{run_battery, suite_batteries, with_threads, Battery, BatteryOutcome, SUITES};

/// Parses a job document.
pub fn parse_job(text: &str) -> CliResult<Job> {
    serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
}

/// Runs one job; a missing seed means 0.
pub fn run_job(job: &Job) -> CliResult<Report> {
    let start = Instant::now();
    let (result, checks) = ops::dispatch(&job.kind, &job.params, job.seed.unwrap_or(0))?;
    Ok(Report {
        schema: SCHEMA.into(),
        job: serde_json::to_value(job).expect("job serialises"),
        result,
        checks,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every battery of a named suite.
pub fn run_suite(name: &str, seed: u64) -> CliResult<Report> {
    let start = Instant::now();
    let batteries = suite_batteries(name)?;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for b in batteries {
        let out = run_battery(b, seed);
        checks.extend(out.checks);
        notes.extend(out.notes);
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    Ok(Report {
        schema: SCHEMA.into(),
        job: json!({ "suite": name, "seed": seed }),
        result: json!({ "suite": name, "seed": seed, "passed": passed, "failed": checks.len() - passed, "notes": notes }),
        checks,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}
