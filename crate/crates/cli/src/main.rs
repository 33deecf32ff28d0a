mod analyze;
mod compile;
mod error;
mod io;
mod reduce;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::io::OrderArgs;

/// Structure analysis, extended formulations and reductions for
/// pseudo-Boolean optimization.
#[derive(Parser)]
#[command(name = "pbpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report rank, β-acyclicity, nest-set width and gap, and a treewidth bound
    Analyze {
        file: PathBuf,
        /// Print JSON instead of `key: value` lines
        #[arg(long)]
        json: bool,
        /// Largest width or gap tried by the bounded searches on large inputs
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Compile an extended formulation to CPLEX LP with a JSON sidecar
    CompileEf {
        file: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
        /// LP output path; the sidecar goes to `<out>.json`
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Transform instances
    #[command(subcommand)]
    Reduce(reduce::ReduceCommand),
    /// Maximize an instance objective
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = solve::Method::Brute)]
        method: solve::Method,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Check an extended formulation against brute force on random objectives
    VerifyEf {
        /// Instance whose pseudo-Boolean polytope the system should describe
        file: PathBuf,
        /// LP file to check; compiled from the instance when absent
        #[arg(long)]
        lp: Option<PathBuf>,
        /// Sidecar of the LP file [default: <lp>.json]
        #[arg(long, requires = "lp")]
        sidecar: Option<PathBuf>,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, env = "PBO_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> error::CliResult<()> {
    match cli.command {
        Command::Analyze { file, json, max_k } => analyze::run(&file, json, max_k),
        Command::CompileEf { file, order, out } => compile::run(&file, &order, &out),
        Command::Reduce(cmd) => reduce::run(cmd),
        Command::Solve { file, method, order } => solve::solve(&file, method, &order),
        Command::VerifyEf {
            file,
            lp,
            sidecar,
            order,
            trials,
            seed,
        } => solve::verify(&file, lp.as_deref(), sidecar.as_deref(), &order, trials, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
