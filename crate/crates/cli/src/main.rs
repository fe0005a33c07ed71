use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use loopcheck::commands::{
    cmd_autotopisms, cmd_check, cmd_enumerate, cmd_sweep, cmd_verify, EnumerateFilter, Outcome,
    EXIT_INPUT,
};
use loopcheck::enumerate::Sampling;
use loopcheck::io::Report;
use loopcheck::{Bounds, PropertyId, TheoremId, TripleKind};

/// Check Smarandache Bol properties of finite loops given as Cayley tables.
#[derive(Parser)]
#[command(name = "loopcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities and inverse/alternative properties.
    Check {
        file: PathBuf,
        /// Subloop elements, comma separated; overrides the file.
        #[arg(long, value_delimiter = ',')]
        subloop: Option<Vec<usize>>,
        /// Property tags such as S2_BOL or S_RPAP:5; all when omitted.
        #[arg(long = "property", short = 'p', value_delimiter = ',')]
        properties: Vec<PropertyId>,
    },
    /// Enumerate autotopism triples and test the group axioms.
    Autotopisms {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        subloop: Option<Vec<usize>>,
        /// full, right or left; repeatable.
        #[arg(long = "kind", short = 'k', value_delimiter = ',', default_value = "full")]
        kinds: Vec<TripleKind>,
        /// Print every triple.
        #[arg(long)]
        list: bool,
    },
    /// Verify theorems such as T1_11 on one special loop.
    Verify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        subloop: Option<Vec<usize>>,
        /// Theorem tags; all when omitted.
        #[arg(long = "theorem", short = 't', value_delimiter = ',')]
        theorems: Vec<TheoremId>,
        /// Largest exponent used by the power statements.
        #[arg(long, default_value_t = 5)]
        bounds: u32,
    },
    /// Enumerate normalized loops of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// all, or s2bl-not-bol to search for non-Bol findings.
        #[arg(long, default_value = "all")]
        filter: EnumerateFilter,
        /// Directory receiving one table file per result.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Random seed for orders above the exhaustive limit.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled loops for orders above the exhaustive limit.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Verify theorems over every special loop up to an order.
    Sweep {
        #[arg(long)]
        max_order: usize,
        #[arg(long = "theorem", short = 't', value_delimiter = ',')]
        theorems: Vec<TheoremId>,
        #[arg(long, default_value_t = 5)]
        bounds: u32,
    },
}

fn read(file: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(file).map_err(|e| {
        let mut report = Report::new();
        report.push("error", format!("{}: {e}", file.display()));
        Outcome {
            report,
            exit_code: EXIT_INPUT,
        }
    })
}

fn bounds(b: u32) -> Result<Bounds, Outcome> {
    Bounds::with_exponent(b).map_err(|e| {
        let mut report = Report::new();
        report.push("error", e);
        Outcome {
            report,
            exit_code: EXIT_INPUT,
        }
    })
}

fn run(cli: Cli) -> Result<Outcome, Outcome> {
    Ok(match cli.command {
        Command::Check {
            file,
            subloop,
            properties,
        } => cmd_check(&read(&file)?, subloop.as_deref(), &properties),
        Command::Autotopisms {
            file,
            subloop,
            kinds,
            list,
        } => cmd_autotopisms(&read(&file)?, subloop.as_deref(), &kinds, list),
        Command::Verify {
            file,
            subloop,
            theorems,
            bounds: b,
        } => cmd_verify(&read(&file)?, subloop.as_deref(), &theorems, bounds(b)?),
        Command::Enumerate {
            order,
            filter,
            out,
            seed,
            samples,
        } => cmd_enumerate(
            order,
            filter,
            out.as_deref(),
            Sampling {
                seed,
                samples_per_order: samples,
            },
        ),
        Command::Sweep {
            max_order,
            theorems,
            bounds: b,
        } => cmd_sweep(max_order, &theorems, bounds(b)?),
    })
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse()).unwrap_or_else(|o| o);
    print!("{}", outcome.report.to_text());
    ExitCode::from(outcome.exit_code as u8)
}
