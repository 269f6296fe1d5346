//! Acceptance run: one line per criterion with its time budget. Exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bethe_cli::{run_battery, run_suite, with_threads, Battery, Check};

const SEED: u64 = 7;

struct Criterion {
    id: u32,
    title: &'static str,
    batteries: &'static [Battery],
    budget_s: u64,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "Yang-Baxter residuals vanish", batteries: &[Battery::YangBaxter], budget_s: 10 },
    Criterion { id: 2, title: "DWPF determinant and lattice agreement", batteries: &[Battery::DwpfAgreement], budget_s: 30 },
    Criterion { id: 3, title: "Korepin properties", batteries: &[Battery::Korepin], budget_s: 30 },
    Criterion { id: 4, title: "partial DWPF forms and limits", batteries: &[Battery::PartialDwpf], budget_s: 30 },
    Criterion { id: 5, title: "SU(2) sum formula vs chain", batteries: &[Battery::Su2Oracle], budget_s: 60 },
    Criterion { id: 6, title: "Slavnov identity and infinite limit", batteries: &[Battery::Slavnov], budget_s: 60 },
    Criterion { id: 7, title: "SU(3) partition sum vs lattice", batteries: &[Battery::ZSum], budget_s: 180 },
    Criterion { id: 8, title: "SU(3) infinite limits and lemma", batteries: &[Battery::ZLimits], budget_s: 60 },
    Criterion { id: 9, title: "SU(3) sum formula vs chain", batteries: &[Battery::Su3Oracle], budget_s: 120 },
    Criterion { id: 10, title: "factorized scalar products", batteries: &[Battery::Factorized], budget_s: 120 },
    Criterion { id: 11, title: "non-commuting staggered limits", batteries: &[Battery::Staggered], budget_s: 30 },
    Criterion {
        id: 12,
        title: "numeric Bethe roots are eigenvectors",
        batteries: &[Battery::NumericsSu2, Battery::NumericsSu3],
        budget_s: 30,
    },
];

fn line(id: u32, title: &str, ok: bool, detail: &str) -> bool {
    println!("criterion {id:>2} {}: {title} ({detail})", if ok { "PASS" } else { "FAIL" });
    ok
}

fn run_criterion(c: &Criterion) -> bool {
    let start = Instant::now();
    let checks: Vec<Check> = c.batteries.iter().flat_map(|b| run_battery(*b, SEED).checks).collect();
    let elapsed = start.elapsed();
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    let in_time = elapsed < Duration::from_secs(c.budget_s);
    let detail = format!("{} checks, {} failed, {:.2}s of {}s", checks.len(), failed.len(), elapsed.as_secs_f64(), c.budget_s);
    for f in failed.iter().take(5) {
        println!("    failed: {} lhs={} rhs={}", f.name, f.lhs, f.rhs);
    }
    line(c.id, c.title, failed.is_empty() && in_time && !checks.is_empty(), &detail)
}

fn determinism() -> bool {
    let start = Instant::now();
    let run = |threads| with_threads(Some(threads), || run_suite("all", SEED)).and_then(|r| r).map(|r| r.canonical_json());
    let (a, b, c) = match (run(4), run(4), run(1)) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return line(13, "deterministic reports", false, "suite run failed"),
    };
    let detail = format!("{} bytes, {:.2}s", a.len(), start.elapsed().as_secs_f64());
    line(13, "deterministic reports across runs and --threads 1/4", a == b && a == c, &detail)
}

fn main() -> ExitCode {
    let mut ok = true;
    for c in CRITERIA {
        ok &= run_criterion(c);
    }
    ok &= determinism();
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
