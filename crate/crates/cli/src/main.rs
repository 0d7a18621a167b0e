use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rackcode::enumerator::CodeClassParams;

mod commands;
mod render;

use commands::{CliError, Output};

/// Rack-aware storage codes: validation, repair planning, enumerators and
/// LP rate bounds. Node and rack indices are 1-based.
#[derive(Debug, Parser)]
#[command(name = "rackcode", version)]
struct Cli {
    /// Print aligned text instead of JSON.
    #[arg(long, global = true)]
    table: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a code specification and report ranks, Dist(H) and rate.
    Validate {
        spec: PathBuf,
        /// Also list the intra-rack repair groups of this node.
        #[arg(long)]
        groups: Option<usize>,
    },
    /// Plan and verify the repair of a failure scenario.
    Repair {
        spec: PathBuf,
        scenario: PathBuf,
        /// Seed for the verification codewords; overrides the scenario's.
        #[arg(long)]
        seed: Option<u64>,
        /// Random codewords on which the plans are executed.
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Check the code-class properties of a two-rack code.
    Certify {
        spec: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Support enumerator of a two-rack code.
    Enumerate {
        spec: PathBuf,
        /// Also print the dual enumerator.
        #[arg(long)]
        dual: bool,
    },
    /// LP upper bound on the rate.
    Bound(BoundArgs),
    /// Single orbit-counting coefficients.
    Delta {
        #[command(subcommand)]
        kind: DeltaKind,
    },
    /// Rate of a code: lower bound from the dimensions and the exact value.
    Rate { spec: PathBuf },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 0)]
    beta1: usize,
    #[arg(long = "Gamma1", default_value_t = 0)]
    gamma1: usize,
    #[arg(long, default_value_t = 0)]
    r1: usize,
    #[arg(long, default_value_t = 0)]
    beta2: usize,
    #[arg(long = "Gamma2", default_value_t = 0)]
    gamma2: usize,
    #[arg(long, default_value_t = 0)]
    r2: usize,
    #[arg(long, default_value_t = 0)]
    a: usize,
}

impl From<ParamArgs> for CodeClassParams {
    fn from(p: ParamArgs) -> Self {
        CodeClassParams {
            beta1: p.beta1,
            gamma1: p.gamma1,
            r1: p.r1,
            beta2: p.beta2,
            gamma2: p.gamma2,
            r2: p.r2,
            a: p.a,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("program").args(["lp1", "lp2", "both"])))]
pub struct BoundArgs {
    #[arg(long = "N")]
    n: usize,
    #[arg(long = "M", default_value_t = 2)]
    m: usize,
    #[arg(long = "L", default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[command(flatten)]
    params: ParamArgs,
    /// Solve the full program (N ≤ 6).
    #[arg(long)]
    lp1: bool,
    /// Solve the symmetry-reduced program (default).
    #[arg(long)]
    lp2: bool,
    /// Solve both and require equal optima.
    #[arg(long)]
    both: bool,
    /// First term of the reduced intra-locality sum.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    d8_start: u8,
    /// Write each program in LP format into this directory.
    #[arg(long)]
    export_lp: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DeltaKind {
    Delta1 {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        dp: usize,
        #[arg(long)]
        ep: usize,
        #[arg(long)]
        fp: usize,
    },
    Delta2 {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "Gamma1")]
        gamma1: usize,
        #[arg(long)]
        d: usize,
    },
    Delta3 {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "Gamma2")]
        gamma2: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        f: usize,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Validate { spec, groups } => commands::validate(spec, *groups),
        Command::Repair { spec, scenario, seed, trials } => commands::repair(spec, scenario, *seed, *trials),
        Command::Certify { spec, params } => commands::certify(spec, (*params).into()),
        Command::Enumerate { spec, dual } => commands::enumerate(spec, *dual),
        Command::Bound(args) => commands::bound(args),
        Command::Delta { kind } => commands::delta(kind),
        Command::Rate { spec } => commands::rate(spec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let out = run(&cli);
    let elapsed = start.elapsed();
    let (report, code) = match out {
        Ok(o) => (o, ExitCode::SUCCESS),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Domain { message, report }) => {
            eprintln!("error: {message}");
            match report {
                Some(r) => (r, ExitCode::from(1)),
                None => return ExitCode::from(1),
            }
        }
    };
    let text = if cli.table {
        report.text
    } else {
        let mut json = report.json;
        if let Some(obj) = json.as_object_mut() {
            obj.insert("elapsed_ms".into(), serde_json::json!(elapsed.as_secs_f64() * 1e3));
        }
        serde_json::to_string_pretty(&json).expect("report serializes") + "\n"
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    code
}
