use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;
use parity_core::generate::{generate_instance, Family};
use parity_core::{solve, verify_happy_set, SolveOptions};
use serde::Serialize;

/// Verification costs one visibility query per happy edge, so it is skipped
/// above this size to keep large runs about the solver.
const VERIFY_LIMIT: usize = 5_000;

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long)]
    kind: Family,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
    sizes: Vec<usize>,
    /// Number of seeds per size, starting at 0.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    /// Decide only; skip construction and verification.
    #[arg(long)]
    decide_only: bool,
    /// CSV output; stdout if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct Row {
    kind: String,
    n: usize,
    seed: u64,
    unhappy: usize,
    feasible: bool,
    route: String,
    happy_set_size: Option<usize>,
    verified: &'static str,
    generate_ns: u64,
    solve_ns: u64,
}

pub fn run(args: &BenchArgs) -> Result<ExitCode> {
    let sink: Box<dyn Write> = match &args.output {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    let mut all_verified = true;
    for &n in &args.sizes {
        for seed in 0..args.seeds {
            let t = Instant::now();
            let inst = generate_instance(args.kind, n, seed)?;
            let generate_ns = t.elapsed().as_nanos() as u64;
            let opts = SolveOptions {
                construct: !args.decide_only,
                seed,
            };
            let t = Instant::now();
            let sol = solve(&inst, None, &opts)?;
            let solve_ns = t.elapsed().as_nanos() as u64;
            let verified = match &sol.happy_set {
                Some(h) if n <= VERIFY_LIMIT => {
                    let ok = verify_happy_set(&inst, h).passed();
                    all_verified &= ok;
                    if ok {
                        "pass"
                    } else {
                        "fail"
                    }
                }
                _ => "skipped",
            };
            log::info!("{} n={n} seed={seed}: {} in {solve_ns} ns", args.kind, sol.route);
            csv.serialize(Row {
                kind: args.kind.to_string(),
                n,
                seed,
                unhappy: inst.unhappy.len(),
                feasible: sol.feasible,
                route: sol.route.to_string(),
                happy_set_size: sol.happy_set.as_ref().map(|h| h.len()),
                verified,
                generate_ns,
                solve_ns,
            })?;
        }
    }
    csv.flush()?;
    Ok(if all_verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
