use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use bethe_cli::{parse_job, run_job, run_suite, with_threads, CliError, CliResult, Report};
use clap::Parser;

/// Exact partition functions and scalar products from JSON jobs.
#[derive(Parser)]
#[command(name = "bethe", version)]
struct Args {
    /// Job file; `-` reads standard input.
    #[arg(long, conflicts_with = "suite")]
    job: Option<PathBuf>,
    /// Named verification suite.
    #[arg(long)]
    suite: Option<String>,
    /// Seed for suites; overrides the job seed when given.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for parallel sums.
    #[arg(long)]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_job(path: Option<&PathBuf>) -> CliResult<String> {
    let mut text = String::new();
    let res = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|t| text = t),
        _ => std::io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    res.map_err(|e| CliError::Schema(format!("cannot read job: {e}")))?;
    Ok(text)
}

fn run(args: &Args) -> CliResult<Report> {
    with_threads(args.threads, || match &args.suite {
        Some(name) => run_suite(name, args.seed.unwrap_or(0)),
        None => {
            let mut job = parse_job(&read_job(args.job.as_ref())?)?;
            if args.seed.is_some() {
                job.seed = args.seed;
            }
            run_job(&job)
        }
    })?
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn main() -> anyhow::Result<ExitCode> {
    let args = Args::parse();
    let (text, code) = match run(&args) {
        Ok(report) => (serde_json::to_string_pretty(&report)?, report.exit_code() as u8),
        Err(e) => (serde_json::to_string_pretty(&e.to_json())?, 2),
    };
    emit(&text, args.out.as_ref())?;
    Ok(ExitCode::from(code))
}
