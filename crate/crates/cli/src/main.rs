//! `darcais` command-line tool.
//!
//! Exit codes: 0 success (or a proven non-root), 1 inconclusive certificate
//! or a tau zero, 2 usage and domain errors, 3 exhausted g tables.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, RunConfig, CONFIG_ENV};

#[derive(Debug, Parser)]
#[command(name = "darcais", version, about = "Exact D'Arcais polynomials and non-root certificates")]
struct Cli {
    /// JSON file with default settings
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Arithmetic function: sigma, identity, or a table file
    #[arg(long, global = true)]
    g: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    oracle_bound: Option<usize>,
    #[arg(long, global = true)]
    exact_eval_bound: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print A_n^g (or P_n^g), optionally reduced and factored mod p
    Poly {
        n: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        factor: bool,
        /// Print P_n^g = A_n^g / n! instead
        #[arg(long)]
        normalized: bool,
        /// Compare against the partition-sum oracle
        #[arg(long)]
        check: bool,
    },
    /// Ramanujan's tau(n), or a zero search up to --max
    Tau {
        #[arg(required_unless_present = "max")]
        n: Option<u64>,
        #[arg(long, conflicts_with = "n")]
        max: Option<u64>,
    },
    /// Certify P_n^g(alpha) != 0 for alpha given as cyc:m,a,b | quad:D,a,b | gauss:a,b
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        #[arg(long, required_unless_present = "all_n", conflicts_with = "all_n")]
        n: Option<u64>,
        #[arg(long)]
        all_n: bool,
        /// Comma-separated primes for the local-obstruction search
        #[arg(long, allow_hyphen_values = true)]
        primes: Option<String>,
        #[arg(long)]
        not_ramified_bound: Option<u64>,
    },
    /// Certify every point of a grid a*gen + b
    Scan {
        /// gauss | quad:D | cyc:m
        #[arg(long, default_value = "gauss")]
        kind: String,
        /// lo:hi, inclusive
        #[arg(long, allow_hyphen_values = true)]
        a_range: String,
        #[arg(long, allow_hyphen_values = true)]
        b_range: String,
        #[arg(long, default_value_t = 30)]
        n_max: u64,
        /// Write OUT.csv and OUT.json instead of printing
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        primes: Option<String>,
    },
    /// Minimal polynomial and index of a candidate
    Minpoly {
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
    },
    /// Splitting of p in the field of a candidate
    Split {
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        #[arg(long)]
        p: u64,
    },
    /// Audit the local conditions mod 5, 7 and 11 for roots of unity
    Zmija,
    /// Routh-Hurwitz test of H_n^g = P_n^g / X for n = 1..=max
    Hurwitz {
        #[arg(long, default_value_t = 30)]
        max: usize,
    },
}

/// A failed run and its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(darcais::Error),
}

impl From<darcais::Error> for CliError {
    fn from(e: darcais::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(darcais::Error::Range { .. }) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn run_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(CliError::Usage)?,
        None => RunConfig::default(),
    };
    if let Some(g) = &cli.g {
        cfg.g_spec = g.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(f) = cli.format {
        cfg.output_format = Some(f);
    }
    if let Some(b) = cli.oracle_bound {
        cfg.oracle_bound = b;
    }
    if let Some(b) = cli.exact_eval_bound {
        cfg.exact_eval_bound = b;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<commands::Output, CliError> {
    let mut cfg = run_config(&cli)?;
    match cli.command {
        Command::Poly { n, modulus, factor, normalized, check } => {
            commands::poly(&cfg, n, modulus, factor, normalized, check)
        }
        Command::Tau { n, max } => commands::tau_cmd(&cfg, n, max),
        Command::Certify { candidate, n, all_n: _, primes, not_ramified_bound } => {
            if let Some(p) = primes {
                cfg.prime_set = config::parse_primes(&p).map_err(CliError::Usage)?;
            }
            if let Some(b) = not_ramified_bound {
                cfg.not_ramified_bound = b;
            }
            commands::certify(&cfg, &candidate, n)
        }
        Command::Scan { kind, a_range, b_range, n_max, out, primes } => {
            if let Some(p) = primes {
                cfg.prime_set = config::parse_primes(&p).map_err(CliError::Usage)?;
            }
            let a = config::parse_range(&a_range).map_err(CliError::Usage)?;
            let b = config::parse_range(&b_range).map_err(CliError::Usage)?;
            commands::scan(&cfg, &kind, a, b, n_max, out.as_deref())
        }
        Command::Minpoly { candidate } => commands::minpoly(&cfg, &candidate),
        Command::Split { candidate, p } => commands::split(&cfg, &candidate, p),
        Command::Zmija => commands::zmija(&cfg),
        Command::Hurwitz { max } => commands::hurwitz(&cfg, max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
