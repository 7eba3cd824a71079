use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use parity_core::generate::{generate_instance, Family};
use parity_core::io::{read_cycle, read_happy_set, read_instance, write_happy_set, write_instance};
use parity_core::oracle::{brute_force, OracleLimits};
use parity_core::{solve, verify_happy_set, Instance, SolveOptions, ValidationOptions};

mod bench;
mod render;
mod report;

use report::{digest, Decision, RunReport};

/// Decide and build parity-constrained, crossing-free augmentations of plane
/// straight-line graphs.
///
/// Exit codes: 0 feasible or passed, 1 infeasible or failed, 2 error,
/// 3 oracle budget exhausted.
#[derive(Parser)]
#[command(name = "parity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a happy set exists.
    Decide(SolveArgs),
    /// Build a happy set, verify it, and write it out.
    Construct(SolveArgs),
    /// Check a happy set against an instance.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Happy-set JSON file.
        #[arg(long)]
        happy: PathBuf,
    },
    /// Exhaustive search, for small instances.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = OracleLimits::default().max_vertices)]
        max_vertices: usize,
        #[arg(long, default_value_t = OracleLimits::default().max_vis_edges)]
        max_vis_edges: usize,
        #[arg(long, default_value_t = OracleLimits::default().node_budget)]
        node_budget: u64,
        /// Write the happy set found here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded instance with a random even unhappy set.
    Gen {
        #[arg(long)]
        kind: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw an instance (and optionally a happy set) as SVG.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        happy: Option<PathBuf>,
        /// Also draw the visibility graph.
        #[arg(long)]
        show_vis: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Time generate + solve + verify over sizes and seeds; writes CSV.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance JSON file.
    #[arg(short, long)]
    input: PathBuf,
    /// Skip the cubic collinearity check on load.
    #[arg(long)]
    skip_gp_check: bool,
}

impl InputArgs {
    fn load(&self) -> Result<Instance> {
        let text = read(&self.input)?;
        let opts = ValidationOptions {
            general_position: !self.skip_gp_check,
        };
        read_instance(&text, opts).with_context(|| format!("loading {}", self.input.display()))
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Hugging cycle JSON file; required for graphs that are neither paths nor convex.
    #[arg(long)]
    hugging_cycle: Option<PathBuf>,
    /// Seed for randomized tree search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (decide: report; construct: happy set).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => write(p, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run_solver(args: &SolveArgs, construct: bool) -> Result<ExitCode> {
    let inst = args.input.load()?;
    let cycle = args
        .hugging_cycle
        .as_deref()
        .map(|p| read(p).and_then(|t| read_cycle(&t).context("parsing hugging cycle")))
        .transpose()?;
    let opts = SolveOptions {
        construct,
        seed: args.seed,
    };
    let start = Instant::now();
    let sol = solve(&inst, cycle.as_deref(), &opts)?;
    let wall = start.elapsed();
    log::info!("route {} in {wall:?}", sol.route);

    let mut rep = RunReport {
        digest: digest(&inst),
        mode: if construct { "construct" } else { "decide" }.into(),
        decision: Decision::from_feasible(sol.feasible),
        happy_set_size: sol.happy_set.as_ref().map(|h| h.len()),
        wall_ns: wall.as_nanos() as u64,
        solver_path: Some(sol.route),
        seed: args.seed,
        note: sol.note.clone(),
    };
    if !construct {
        emit(args.output.as_deref(), &rep.to_json())?;
        return Ok(rep.decision.exit_code());
    }
    if !sol.feasible {
        eprintln!("{}", rep.to_json());
        return Ok(ExitCode::from(1));
    }
    let Some(h) = sol.happy_set else {
        bail!(
            "instance is feasible but no happy set was built: {}",
            sol.note.unwrap_or_default()
        );
    };
    let check = verify_happy_set(&inst, &h);
    if !check.passed() {
        bail!("internal error: constructed happy set fails verification: {:?}", check.failures);
    }
    rep.happy_set_size = Some(h.len());
    emit(args.output.as_deref(), &write_happy_set(&h))?;
    eprintln!("{}", rep.to_json());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decide(args) => run_solver(&args, false),
        Command::Construct(args) => run_solver(&args, true),
        Command::Verify { input, happy } => {
            let inst = input.load()?;
            let h = read_happy_set(&read(&happy)?).context("parsing happy set")?;
            let start = Instant::now();
            let check = verify_happy_set(&inst, &h);
            let rep = RunReport {
                digest: digest(&inst),
                mode: "verify".into(),
                decision: if check.passed() { Decision::Pass } else { Decision::Fail },
                happy_set_size: Some(h.len()),
                wall_ns: start.elapsed().as_nanos() as u64,
                solver_path: None,
                seed: 0,
                note: (!check.passed()).then(|| {
                    check.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")
                }),
            };
            println!("{}", rep.to_json());
            Ok(rep.decision.exit_code())
        }
        Command::Oracle {
            input,
            max_vertices,
            max_vis_edges,
            node_budget,
            output,
        } => {
            let inst = input.load()?;
            let limits = OracleLimits {
                max_vertices,
                max_vis_edges,
                node_budget,
            };
            let start = Instant::now();
            let out = brute_force(&inst, &limits)?;
            let rep = RunReport {
                digest: digest(&inst),
                mode: "oracle".into(),
                decision: Decision::from_feasible(out.feasible()),
                happy_set_size: out.happy_set.as_ref().map(|h| h.len()),
                wall_ns: start.elapsed().as_nanos() as u64,
                solver_path: Some(parity_core::SolverPath::Oracle),
                seed: 0,
                note: Some(format!("{} search nodes", out.nodes)),
            };
            if let (Some(path), Some(h)) = (&output, &out.happy_set) {
                write(path, &write_happy_set(h))?;
            }
            println!("{}", rep.to_json());
            Ok(rep.decision.exit_code())
        }
        Command::Gen {
            kind,
            n,
            seed,
            output,
        } => {
            let inst = generate_instance(kind, n, seed)?;
            emit(output.as_deref(), &write_instance(&inst))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            input,
            happy,
            show_vis,
            output,
        } => {
            let inst = input.load()?;
            let h = happy
                .as_deref()
                .map(|p| read(p).and_then(|t| read_happy_set(&t).context("parsing happy set")))
                .transpose()?;
            let svg = render::svg(&inst, h.as_ref(), show_vis);
            write(&output, &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench(args) => bench::run(&args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("PARITY_LOG")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .downcast_ref::<parity_core::Error>()
                .is_some_and(|e| matches!(e, parity_core::Error::OracleBudget(_)));
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}
