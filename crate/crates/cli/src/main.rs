//! `polyu`: universal mixed sums of generalized square and octagonal numbers.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, Layer, RunConfig, Threads};

#[derive(Debug, Parser)]
#[command(name = "polyu", version, about = "Universal mixed sums of generalized 4- and 8-gonal numbers")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Scan bound (at least 61). Environment: POLYU_BOUND. Default 100000.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Worker threads, a positive integer or `auto`. Environment: POLYU_THREADS.
    #[arg(long, global = true)]
    threads: Option<Threads>,
    /// Output encoding. Environment: POLYU_FORMAT.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout. Environment: POLYU_OUTPUT.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// JSON config file with any of `bound`, `threads`, `format`, `output`.
    /// Environment: POLYU_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a sum represents n and print one witness.
    Check { sum: String, n: u64 },
    /// Least positive integer the sum misses, scanning up to the bound.
    Truant { sum: String },
    /// Decide universality by the 19-integer criterion and a scan to the bound.
    Universal { sum: String },
    /// Every positive integer up to the bound that the sum misses.
    Exceptional { sum: String },
    /// List the escalation candidates of one arity with their parents.
    Escalate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=7))]
        arity: u64,
    },
    /// Classify candidates and count proper universal sums.
    Catalogue {
        /// Stop at this arity and list its proper universal sums.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=6))]
        arity: Option<u64>,
        /// Write `arity-<k>.csv` and `arity-<k>.json` for each arity here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Ternary quadratic form tools.
    #[command(subcommand)]
    Forms(FormsCommand),
    /// Recompute every embedded table and report per-row results.
    VerifyTables {
        /// Restrict to these fixture ids (repeatable). Default: all.
        #[arg(long = "table")]
        tables: Vec<String>,
        /// Bound for the representation-count identity.
        #[arg(long, default_value_t = 10_000)]
        siegel_bound: u64,
    },
}

#[derive(Debug, Subcommand)]
enum FormsCommand {
    /// Number of integer vectors v with f(v) = n.
    Count { form: String, n: u64 },
    /// Values up to the bound represented by the form.
    Represented {
        form: String,
        /// List the positive values that are not represented instead.
        #[arg(long)]
        complement: bool,
    },
    /// Residue vectors v mod d with g(v) = a mod d.
    Classes { g: String, d: i64, a: i64 },
    /// Every T with Tᵗ·M_f·T = d²·M_g.
    Transforms { f: String, g: String, d: i64 },
    /// Split the residue classes of g into good and bad vectors for f.
    Bad { f: String, g: String, d: i64, a: i64 },
    /// Check a witness T against the bad vectors and report its eigenvectors.
    Pme {
        f: String,
        g: String,
        d: i64,
        a: i64,
        /// Matrix rows separated by `;`, such as `5,0,0;0,4,-3;0,3,4`.
        t: String,
        /// Also check the represented-set conclusion up to this bound.
        #[arg(long)]
        conclusion_bound: Option<u64>,
    },
    /// Decide g ≺_{d,a} f and spot-check the represented-set inclusion.
    Prec {
        f: String,
        g: String,
        d: i64,
        a: i64,
        #[arg(long, default_value_t = 1000)]
        spot_bound: u64,
    },
    /// Check the representation-count identity for n = 1 mod 3.
    Siegel {
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
    },
}

/// Exit status when a requested check fails.
const EXIT_FAILED: u8 = 1;
/// Exit status for usage, parse and configuration errors.
const EXIT_ERROR: u8 = 2;

fn resolve_config(args: &GlobalArgs) -> Result<RunConfig, String> {
    let flags = Layer {
        bound: args.bound,
        threads: args.threads,
        format: args.format,
        output: args.output.clone(),
    };
    let env = Layer::from_env(|k| std::env::var(k).ok())?;
    let path = args
        .config
        .clone()
        .or_else(|| std::env::var_os("POLYU_CONFIG").map(PathBuf::from));
    let file = match path {
        Some(p) => Layer::from_file(&p)?,
        None => Layer::default(),
    };
    config::resolve(&[flags, env, file])
}

fn run(cli: Cli) -> Result<bool, String> {
    let cfg = resolve_config(&cli.global)?;
    if let Threads::Count(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let report = commands::dispatch(&cli.command, &cfg)?;
    let rendered = report.render(cfg.format)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
