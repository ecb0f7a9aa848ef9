mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::RunReport;

/// Quasi-Hopf algebras, their modules and anti-Yetter-Drinfeld structures.
#[derive(Parser)]
#[command(name = "qhayd", version)]
struct Cli {
    /// Print a machine-readable run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quasi-Hopf axioms of an algebra file (`-` for stdin).
    Validate { algebra: PathBuf },
    #[command(subcommand)]
    Module(ModuleCmd),
    #[command(subcommand)]
    Ayd(AydCmd),
    #[command(subcommand)]
    Dsl(DslCmd),
    #[command(subcommand)]
    Zoo(ZooCmd),
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Check that the action matrices define a module.
    Check { module: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Subcommand)]
enum AydCmd {
    /// Check the defining conditions of a Type I or Type II structure.
    Check {
        ayd: PathBuf,
        /// Override the `type` recorded in the file.
        #[arg(long = "type")]
        kind: Option<Kind>,
    },
    /// Convert between the Type I and Type II presentations.
    Convert {
        ayd: PathBuf,
        #[arg(long)]
        to: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The half-braiding at a module V.
    Tau {
        ayd: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Decide stability; an unstable structure exits with 1.
    Stability { ayd: PathBuf },
    /// Enumerate every structure on a module over a prime field.
    Solve {
        #[arg(long = "type")]
        kind: Kind,
        #[arg(long)]
        module: PathBuf,
        /// Field to solve over, e.g. `fp:3`; defaults to the module's field.
        #[arg(long)]
        over: Option<String>,
        /// Maximum number of points to scan; defaults to `QHAYD_BUDGET` or 10^6.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DslCmd {
    /// Evaluate a Sweedler-notation equation on every basis assignment.
    Check {
        #[arg(long)]
        eq: PathBuf,
        #[arg(long)]
        ctx: PathBuf,
    },
}

#[derive(Subcommand)]
enum ZooCmd {
    /// List the bundled algebras and aYD-modules with their verdicts.
    List,
    /// Write an algebra, its standard modules and bundled structures as JSON.
    Emit {
        name: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut run = commands::Run::new(argv);
    let outcome = commands::dispatch(&mut run, &cli.command);
    let report = match outcome {
        Ok(()) => run.report.finish(),
        Err(e) => RunReport::failed(run.report.command, run.report.inputs, &e),
    };
    if cli.json {
        match report.to_json() {
            Ok(s) => print!("{s}"),
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
        }
    } else {
        // A document bound for stdout keeps it clean; the report then goes to stderr.
        let text = report.to_text();
        match run.raw_stdout {
            Some(raw) if report.exit_code != 2 => {
                eprint!("{text}");
                print!("{raw}");
            }
            _ if report.exit_code == 2 => eprint!("{text}"),
            _ => print!("{text}"),
        }
    }
    ExitCode::from(report.exit_code)
}
