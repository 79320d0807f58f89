//! `modcount`: JSON front end to the expander, indicator, counting and
//! parity routines.

mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use modcount::fractures::{GraphProperty, DEFAULT_FRACTURE_CAP};
use modcount::groups::DEFAULT_CLOSURE_CAP;
use serde::Serialize;

use error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "modcount", version, about = "Modular counting experiments on graphs and p-group expanders")]
struct Cli {
    /// Single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Path,
    Cycle,
    Stpath,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the p = 3 congruence quotients and report orders and spectra.
    Expander {
        #[arg(long, default_value_t = 4)]
        max_level: usize,
        /// Levels above this skip the dense spectrum.
        #[arg(long, default_value_t = modcount::expander::DEFAULT_SPECTRAL_MAX_LEVEL)]
        spectral_max_level: usize,
        #[arg(long, env = "MODCOUNT_CLOSURE_CAP", default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
        /// Write each Cayley graph as an edge list into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Square-complex relations for a prime p and residue classes alpha, beta.
    Presentation {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
        /// File of relation words, one per line; searches for a delta giving them.
        #[arg(long = "match")]
        match_file: Option<PathBuf>,
    },
    /// The signed fracture indicator, on the fixed points (--m) or on a graph.
    Indicator {
        #[arg(long)]
        property: GraphProperty,
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        m: Option<usize>,
        /// Brute-force sum over all fractures of this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Report residues mod these primes.
        #[arg(long = "mod")]
        moduli: Vec<u32>,
        #[arg(long, env = "MODCOUNT_FRACTURE_CAP", default_value_t = DEFAULT_FRACTURE_CAP)]
        cap: u128,
        /// Per-class table of base graphs (m <= 5).
        #[arg(long, requires = "m")]
        breakdown: bool,
        /// Recompute with the independent enumeration and compare.
        #[arg(long, requires = "m")]
        verify: bool,
    },
    /// hom(H, G), exactly or mod p; S/T headers in both files give a labelled count.
    Homcount {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long = "mod")]
        p: Option<u32>,
        /// Seed for the automorphism choice in the reduction.
        #[arg(long)]
        seed: Option<u64>,
        /// Host colouring by pattern vertices, e.g. "0 0 1 2"; adds prescribed and colourful counts.
        #[arg(long)]
        colouring: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Parity of k-paths, k-cycles or s-t paths.
    Pathcycle {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: PathBuf,
        /// Defaults to the S header of the graph file.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        verify: bool,
    },
    /// The p-reduced quotient of a pattern graph.
    Reduce {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the acceptance battery (or selected criteria).
    Selftest {
        #[arg(long = "criterion")]
        criteria: Vec<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_level: usize,
        #[arg(long, env = "MODCOUNT_CLOSURE_CAP", default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
        #[arg(long, env = "MODCOUNT_FRACTURE_CAP", default_value_t = DEFAULT_FRACTURE_CAP)]
        fracture_cap: u128,
    },
}

#[derive(Serialize)]
struct Envelope {
    schema_version: u32,
    command: &'static str,
    elapsed_ms: u128,
    result: serde_json::Value,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Expander { .. } => "expander",
        Command::Presentation { .. } => "presentation",
        Command::Indicator { .. } => "indicator",
        Command::Homcount { .. } => "homcount",
        Command::Pathcycle { .. } => "pathcycle",
        Command::Reduce { .. } => "reduce",
        Command::Selftest { .. } => "selftest",
    }
}

/// A command's JSON plus an optional failure to report after printing it.
pub type Output = (serde_json::Value, Option<CliError>);

fn dispatch(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Expander { max_level, spectral_max_level, closure_cap, export } => {
            commands::expander(max_level, spectral_max_level, closure_cap, export.as_deref())
        }
        Command::Presentation { p, alpha, beta, match_file } => commands::presentation(p, alpha, beta, match_file.as_deref()),
        Command::Indicator { property, m, graph, moduli, cap, breakdown, verify } => {
            commands::indicator(property, m, graph.as_deref(), &moduli, cap, breakdown, verify)
        }
        Command::Homcount { pattern, host, p, seed, colouring, verify } => {
            commands::homcount(&pattern, &host, p, seed, colouring.as_deref(), verify)
        }
        Command::Pathcycle { mode, k, graph, s, t, explain, verify } => {
            commands::pathcycle(mode, k, &graph, s, t, explain, verify)
        }
        Command::Reduce { pattern, p, seed } => commands::reduce(&pattern, p, seed),
        Command::Selftest { criteria, seed, max_level, closure_cap, fracture_cap } => {
            commands::selftest(&criteria, seed, max_level, closure_cap, fracture_cap)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let start = Instant::now();
    let (result, failure) = match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let env = Envelope { schema_version: SCHEMA_VERSION, command: name, elapsed_ms: start.elapsed().as_millis(), result };
    let text = if cli.compact { serde_json::to_string(&env) } else { serde_json::to_string_pretty(&env) };
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("reports serialise"));
    match failure {
        Some(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        None => ExitCode::SUCCESS,
    }
}
