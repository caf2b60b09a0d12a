//! `penta`: exact distance analysis of the Sierpinski pentagon graph
//! family. Subcommands generate graph documents, emit the exact metrics
//! table, run the cross-validation suite, reproduce the model fit, and
//! plot the growth laws.

mod commands;
mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use penta_core::PentaError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "penta",
    version,
    about = "Sierpinski pentagon distance analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Auto,
    Inclusive,
    Exclusive,
}

#[derive(Clone, Copy, ValueEnum)]
enum NegativeControl {
    /// Glue the five copies with flipped corner roles.
    MisalignedGluing,
    /// Drop the fixed d12 shift from the far-hub overcount routes.
    FarHubMisread,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Relative,
    Absolute,
}

#[derive(Subcommand)]
enum Command {
    /// Build G(t) and write its graph document (JSON).
    Generate {
        #[arg(long)]
        t: u32,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the exact metrics table for t = 0..=t-max.
    Table {
        #[arg(long, default_value_t = 11)]
        t_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full cross-validation suite; exit 0 iff every gate passes.
    Verify {
        /// Largest generation checked against brute-force BFS.
        #[arg(long, default_value_t = 4)]
        oracle_max: u32,
        /// Largest generation for the reference-table gate.
        #[arg(long, default_value_t = 11)]
        t_max: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::Auto)]
        delta_convention: ConventionArg,
        /// Swap in a deliberately broken reading; the suite must fail.
        #[arg(long, value_enum)]
        negative_control: Option<NegativeControl>,
    },
    /// Solve the least-squares model for the overcount table and report it.
    Fit {
        /// Training window, inclusive on both ends (e.g. 0..7).
        #[arg(long, default_value = "0..7")]
        fit_window: String,
        /// Add the ninth basis term 5^(2t).
        #[arg(long)]
        with_a7: bool,
        #[arg(long, default_value_t = 11)]
        validate_max: u32,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Relative)]
        objective: ObjectiveArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the log-log growth of APL and diameter against N as SVG.
    Plot {
        #[arg(long, default_value_t = 20)]
        t_max: u32,
        #[arg(long, default_value = "penta-plot.svg")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { t, out } => commands::generate(t, out.as_deref()),
        Command::Table { t_max, format, out } => commands::table(t_max, format, out.as_deref()),
        Command::Verify {
            oracle_max,
            t_max,
            delta_convention,
            negative_control,
        } => commands::verify(oracle_max, t_max, delta_convention, negative_control),
        Command::Fit {
            fit_window,
            with_a7,
            validate_max,
            objective,
            out,
        } => commands::fit_cmd(
            &fit_window,
            with_a7,
            validate_max,
            objective,
            out.as_deref(),
        ),
        Command::Plot { t_max, out } => commands::plot(t_max, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("penta: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Exit contract: 0 success, 1 gate or data failure, 2 usage, 3 resource.
fn exit_code(e: &PentaError) -> u8 {
    match e {
        PentaError::Usage(_) | PentaError::Io(_) => 2,
        PentaError::Resource { .. } => 3,
        _ => 1,
    }
}
