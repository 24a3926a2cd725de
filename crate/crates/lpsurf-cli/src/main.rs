//! `lpsurf`: checks contact-type structure axioms, analyzes hypersurfaces
//! and verifies the induced-structure identities on builtin examples or
//! user-supplied JSON configs.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lpsurf_cli::commands::{
    cmd_analyze, cmd_check_structure, cmd_export_example, cmd_list_examples,
    cmd_verify_theorems, resolve_target, CliError,
};
use lpsurf_cli::report::Report;
use lpsurf_core::report::CheckConfig;

#[derive(Parser)]
#[command(
    name = "lpsurf",
    version,
    about = "Verifier for almost contact, Lorentzian almost paracontact and \
             Lorentzian para-Sasakian structures and their hypersurfaces"
)]
struct Cli {
    /// Seed for the randomized residual sampling.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of sample points per identity.
    #[arg(long, global = true, default_value_t = 20)]
    points: usize,

    /// Residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the structure axioms of an example id or config file.
    CheckStructure { target: String },
    /// Frame, classification, decompositions and induced data for each
    /// hypersurface of the target.
    Analyze {
        target: String,
        /// Restrict to one hypersurface by name.
        #[arg(long)]
        hypersurface: Option<String>,
    },
    /// Run the applicable hypersurface theorem batteries.
    VerifyTheorems {
        target: String,
        /// Restrict to one hypersurface by name.
        #[arg(long)]
        hypersurface: Option<String>,
    },
    /// List the builtin examples.
    ListExamples,
    /// Print (or write) the config document of a builtin example.
    ExportExample {
        id: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn input_error(error: &CliError) -> ExitCode {
    eprintln!("error: {error}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = CheckConfig {
        seed: cli.seed,
        sample_points: cli.points.max(1),
        tol: if cli.tol > 0.0 { cli.tol } else { 1e-9 },
    };

    match &cli.command {
        Command::CheckStructure { target } => {
            let resolved = match resolve_target(target, None) {
                Ok(r) => r,
                Err(e) => return input_error(&e),
            };
            match cmd_check_structure(&resolved, &cfg) {
                Ok(report) => emit(&report, cli.format),
                Err(e) => input_error(&e),
            }
        }
        Command::Analyze {
            target,
            hypersurface,
        } => {
            let resolved = match resolve_target(target, hypersurface.as_deref()) {
                Ok(r) => r,
                Err(e) => return input_error(&e),
            };
            match cmd_analyze(&resolved, &cfg) {
                Ok(report) => emit(&report, cli.format),
                Err(e) => input_error(&e),
            }
        }
        Command::VerifyTheorems {
            target,
            hypersurface,
        } => {
            let resolved = match resolve_target(target, hypersurface.as_deref()) {
                Ok(r) => r,
                Err(e) => return input_error(&e),
            };
            match cmd_verify_theorems(&resolved, &cfg) {
                Ok(report) => emit(&report, cli.format),
                Err(e) => input_error(&e),
            }
        }
        Command::ListExamples => {
            let listing = cmd_list_examples();
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&listing).expect("listing serializes")
                ),
                Format::Text => {
                    for example in &listing {
                        println!("{}  {}", example.id, example.title);
                        for h in &example.hypersurfaces {
                            println!("  {}  {}", h.id, h.classification);
                        }
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::ExportExample { id, out } => {
            match cmd_export_example(id, out.as_deref()) {
                Ok(text) => {
                    if out.is_none() {
                        println!("{text}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(&e),
            }
        }
    }
}
