//! `mackey`: reports on Burnside rings and Mackey algebras of small groups.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for input errors,
//! 3 when a size cap stops a computation. A property that turns out not to hold (for
//! example a Mackey algebra that is not self-injective) is a passing check.

mod commands;
mod failure;
mod report;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mackey::grpcore::DEFAULT_ORDER_CAP;

use crate::failure::Failure;
use crate::report::ReportDocument;

#[derive(Parser)]
#[command(name = "mackey", version, about = "Burnside rings, spans and Mackey algebras of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
    /// Leave out wall-clock times so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timestamps: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Target {
    /// `cyclic:<n>`, `klein`, `sym:<n>`, `dihedral:<n>`, or a JSON table/permutation document.
    #[arg(long)]
    group: String,
    /// Work over F_p instead of Z.
    #[arg(long = "mod", value_name = "P")]
    modulus: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Order and subgroup classes.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// The Burnside ring RB(G).
    Burnside {
        #[command(subcommand)]
        cmd: BurnsideCmd,
    },
    /// The form β(x, y) = [G/1]*(x·y) on RB(G).
    Gustafson(Target),
    /// The Mackey algebra μ_R(G).
    Mackey {
        #[command(subcommand)]
        cmd: MackeyCmd,
    },
    /// Ring-theoretic and homological checks.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Reproduction suites.
    Reproduce {
        #[command(subcommand)]
        cmd: ReproduceCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Info(Target),
}

#[derive(Subcommand)]
enum BurnsideCmd {
    /// Multiplication table and table of marks.
    Table(Target),
    /// Relations among the basis letters.
    Present(Target),
}

#[derive(Subcommand)]
enum MackeyCmd {
    /// Dimension and Hom dimensions.
    Dim(Target),
    /// Composite of two spans, `--left` applied after `--right`.
    Compose {
        #[command(flatten)]
        target: Target,
        /// `[G/H <- G/L -> G/K]` or `H,L,K[,u,v]`
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Whether μ_{F_p}(G) is self-injective.
    SelfInjective(Target),
    /// Necessary conditions for the Gorenstein dichotomy.
    Gorenstein {
        #[command(flatten)]
        target: Target,
        /// Highest Ext degree checked.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Ext^{i+1} over ZB(G) against Ext^i over F_pB(G) for i up to the degree.
    Rees {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ReproduceCmd {
    /// Every worked example and theorem consequence, against the manifest.
    Paper {
        /// Manifest with reference values; defaults to the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<ReportDocument, Failure> {
    let clock = !cli.no_timestamps;
    let cap = cli.cap;
    let (name, target, records): (&str, Option<&Target>, _) = match &cli.command {
        Command::Group { cmd: GroupCmd::Info(t) } => ("group info", Some(t), timed_one(clock, || commands::group_info(&group(t, cap)?))),
        Command::Burnside { cmd: BurnsideCmd::Table(t) } => {
            ("burnside table", Some(t), timed_one(clock, || commands::burnside_table(&group(t, cap)?, commands::ring(t.modulus)?)))
        }
        Command::Burnside { cmd: BurnsideCmd::Present(t) } => {
            ("burnside present", Some(t), timed_one(clock, || commands::burnside_present(&group(t, cap)?, commands::ring(t.modulus)?)))
        }
        Command::Gustafson(t) => ("gustafson", Some(t), timed_one(clock, || commands::gustafson(&group(t, cap)?, commands::ring(t.modulus)?))),
        Command::Mackey { cmd: MackeyCmd::Dim(t) } => {
            ("mackey dim", Some(t), timed_one(clock, || commands::mackey_dim(&group(t, cap)?, commands::ring(t.modulus)?, cap)))
        }
        Command::Mackey { cmd: MackeyCmd::Compose { target: t, left, right } } => (
            "mackey compose",
            Some(t),
            timed_one(clock, || commands::mackey_compose(&group(t, cap)?, commands::ring(t.modulus)?, left, right)),
        ),
        Command::Check { cmd: CheckCmd::SelfInjective(t) } => (
            "check self-injective",
            Some(t),
            timed_one(clock, || commands::check_self_injective(&group(t, cap)?, commands::require_mod(t.modulus)?, cap)),
        ),
        Command::Check { cmd: CheckCmd::Gorenstein { target: t, degree } } => {
            ("check gorenstein", Some(t), timed_one(clock, || commands::check_gorenstein(&group(t, cap)?, *degree, cap)))
        }
        Command::Check { cmd: CheckCmd::Rees { target: t, degree } } => (
            "check rees",
            Some(t),
            timed_one(clock, || commands::check_rees(&group(t, cap)?, commands::require_mod(t.modulus)?, *degree)),
        ),
        Command::Reproduce { cmd: ReproduceCmd::Paper { manifest } } => {
            let text = match manifest {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| Failure::input(format!("cannot read manifest {}: {e}", path.display())))?,
                None => reproduce::DEFAULT_MANIFEST.to_string(),
            };
            let m = reproduce::Manifest::parse(&text)?;
            ("reproduce paper", None, reproduce::run(&m, cap, clock))
        }
    };
    let records = records?;
    Ok(ReportDocument::new(name, target.map(|t| t.group.clone()), target.and_then(|t| t.modulus), records, clock))
}

fn group(t: &Target, cap: usize) -> Result<mackey::grpcore::Group, Failure> {
    commands::load_group(&t.group, cap)
}

/// Runs a command and stamps its first record with the total wall-clock time.
fn timed_one(clock: bool, f: impl FnOnce() -> commands::Records) -> commands::Records {
    let start = std::time::Instant::now();
    let mut records = f()?;
    if clock {
        if let Some(r) = records.first_mut() {
            r.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
        }
    }
    Ok(records)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            let out = match cli.format {
                Format::Json => doc.to_json(),
                Format::Text => doc.to_text(),
            };
            print!("{out}");
            ExitCode::from(doc.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
