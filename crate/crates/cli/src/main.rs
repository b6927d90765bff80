mod commands;
mod config;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use affdet::achievers::Verdict;
use clap::{Parser, Subcommand};
use serde::Serialize;

use config::{Config, CONFIG_ENV, THREADS_ENV};
use failure::Failure;

#[derive(Parser)]
#[command(name = "affdet", version, about = "Integer group determinants of the affine groups GA(1, q)")]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    /// TOML file with threads, oracle_cap, symbolic_cap, seed.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// RNG seed for sampled elements.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest group order q(q-1) for the brute-force determinant.
    #[arg(long, global = true)]
    oracle_cap: Option<u64>,
    /// Largest q for the all-character polynomial.
    #[arg(long, global = true)]
    symbolic_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute A, B and D for an element file.
    Compute {
        #[arg(long)]
        element: PathBuf,
        /// Also run the brute-force determinant.
        #[arg(long)]
        oracle: bool,
    },
    /// Check the factorization on random elements.
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        coeff_bound: i64,
        #[arg(long)]
        oracle: bool,
        /// Where the first failing element is written.
        #[arg(long, default_value = "counterexample.json")]
        counterexample: PathBuf,
    },
    /// Build an element with the given (A, B).
    Achieve {
        #[arg(long)]
        q: u64,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        /// Also write the witness to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether D is a group determinant for q.
    Decide {
        #[arg(long)]
        q: u64,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
    },
    /// Recompute the stored reference values.
    Reproduce {
        /// q9, q27 or orbits.
        #[arg(long)]
        section: String,
    },
    /// Enumerate small-coefficient elements and list the determinants found.
    Classify {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        coeff_bound: i64,
        #[arg(long, allow_hyphen_values = true)]
        max_abs: String,
        /// Enumerate exhaustively up to this many elements, else sample this many.
        #[arg(long, default_value_t = 1 << 20)]
        limit: u64,
    },
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn resolve_config(cli: &Cli) -> Result<Config, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(c) = cli.oracle_cap {
        cfg.oracle_cap = c;
    }
    if let Some(c) = cli.symbolic_cap {
        cfg.symbolic_cap = c;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Returns whether the command's checks passed.
fn run(cli: Cli) -> Result<bool, Failure> {
    let cfg = resolve_config(&cli)?;
    if cfg.threads > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    match cli.command {
        Command::Compute { element, oracle } => {
            let (report, ok) = commands::compute(&cfg, &element, oracle)?;
            print_json(&report);
            Ok(ok)
        }
        Command::Verify { q, samples, coeff_bound, oracle, counterexample } => {
            let summary = commands::verify(&cfg, q, samples, coeff_bound, oracle, &counterexample)?;
            print_json(&summary);
            eprintln!(
                "q = {q}: congruence {}/{}, identity {}/{}, start independence {}/{}",
                summary.congruence.passed,
                summary.congruence.total,
                summary.identity.passed,
                summary.identity.total,
                summary.start_independence.passed,
                summary.start_independence.total,
            );
            Ok(summary.pass)
        }
        Command::Achieve { q, a, b, out } => {
            let a = commands::parse_int(&a, "A")?;
            let b = commands::parse_int(&b, "B")?;
            let w = commands::achieve_pair(q, &a, &b)?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&w).expect("serializable");
                std::fs::write(&path, text + "\n")
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            print_json(&w);
            Ok(true)
        }
        Command::Decide { q, d } => {
            let d = commands::parse_int(&d, "D")?;
            let decision = commands::decide(q, &d)?;
            print_json(&decision);
            Ok(decision.verdict == Verdict::Yes)
        }
        Command::Reproduce { section } => {
            let report = commands::reproduce(&section)?;
            print_json(&report);
            report.into_result().map(|_| true).map_err(Failure::from)
        }
        Command::Classify { q, coeff_bound, max_abs, limit } => {
            let max_abs = commands::parse_int(&max_abs, "max-abs")?;
            let result = commands::classify(&cfg, q, coeff_bound, &max_abs, limit)?;
            for line in &result.lines {
                println!("{}", serde_json::to_string(line).expect("serializable"));
            }
            Ok(result.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("affdet: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
