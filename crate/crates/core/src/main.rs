use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cpair::cohomology::{Column, DEGREE_CAP_ENV};
use cpair::commands::{self, exit_code, CohomologyOptions, DeformAction, Report};

/// Exact cohomology and formal deformations of Courant pairs over Q.
///
/// Exit codes: 0 success, 1 mathematical failure, 2 input error.
#[derive(Debug, Parser)]
#[command(name = "cpair", version)]
struct Cli {
    /// Print machine-readable JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the laws of a pair document or a deformation document.
    Validate { file: PathBuf },

    /// Cohomology of a pair with the adjoint module, or the module in the document.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// total, leibniz or hochschild
        #[arg(long, default_value = "total")]
        column: Column,
        /// List cocycles representing a basis of the cohomology.
        #[arg(long)]
        representatives: bool,
        /// Compute past the degree cap.
        #[arg(long)]
        force: bool,
    },

    /// Work with a deformation document.
    Deform {
        file: PathBuf,
        #[command(subcommand)]
        action: DeformCommand,
    },

    /// Second cohomology with adjoint coefficients and a basis of classes.
    Rigidity { file: PathBuf },

    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Debug, Subcommand)]
enum DeformCommand {
    /// Check the deformation equations order by order.
    Validate,
    /// First nonzero coefficient and whether it is a cocycle or coboundary.
    Infinitesimal,
    /// Obstruction cochain to the next order and its cocycle identities.
    Obstruction,
    /// Extend order by order, stopping at a nonvanishing obstruction class.
    Extend {
        #[arg(long)]
        to: usize,
    },
    /// Compare infinitesimals with another deformation of the same pair.
    Equivalent { other: PathBuf },
    /// Whether the infinitesimal classes of several deformations are independent.
    Independent { others: Vec<PathBuf> },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// Names of the built-in pairs and their deformations.
    List,
    /// Print the document of a built-in pair or of one of its deformations.
    Export {
        name: String,
        #[arg(long)]
        deformation: Option<String>,
    },
}

fn run(cli: &Cli) -> cpair::Result<Report> {
    match &cli.command {
        Command::Validate { file } => commands::validate(file),
        Command::Cohomology { file, degree, column, representatives, force } => commands::cohomology(
            file,
            CohomologyOptions { degree: *degree, column: *column, representatives: *representatives, force: *force },
        ),
        Command::Deform { file, action } => {
            let action = match action {
                DeformCommand::Validate => DeformAction::Validate,
                DeformCommand::Infinitesimal => DeformAction::Infinitesimal,
                DeformCommand::Obstruction => DeformAction::Obstruction,
                DeformCommand::Extend { to } => DeformAction::Extend { to: *to },
                DeformCommand::Equivalent { other } => DeformAction::Equivalent { other: other.clone() },
                DeformCommand::Independent { others } => DeformAction::Independent { others: others.clone() },
            };
            commands::deform(file, &action)
        }
        Command::Rigidity { file } => commands::rigidity(file),
        Command::Catalog { action: CatalogCommand::List } => Ok(commands::catalog_list()),
        Command::Catalog { action: CatalogCommand::Export { name, deformation } } => {
            commands::catalog_export(name, deformation.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            } else {
                print!("{}", report.text);
            }
            report.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.to_string(), "exit_code": code }));
            }
            eprintln!("error: {e}");
            if matches!(e, cpair::Error::DegreeCap { .. }) {
                eprintln!("pass --force or raise {DEGREE_CAP_ENV} to compute it anyway");
            }
            code
        }
    };
    ExitCode::from(code as u8)
}
