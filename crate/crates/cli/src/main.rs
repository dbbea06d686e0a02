mod commands;
mod report;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact lattices from nested binary codes and codes over F2[u]/u^a.
#[derive(Parser)]
#[command(name = "codelat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a chain or U_a code.
    Check(CheckArgs),
    /// Build a lattice and print its Hermite normal form.
    Build(BuildArgs),
    /// Compare two lattice files.
    Compare { first: PathBuf, second: PathBuf },
    /// Run a named scenario and verify its known facts.
    Examples { name: Scenario },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "kind")]
struct CheckKind {
    /// Schur-product closure of a chain file.
    #[arg(long)]
    schur: bool,
    /// Shifted Schur-product closure of a U_a code file.
    #[arg(long)]
    shifted_schur: bool,
    /// Minimum-distance conditions of a chain file.
    #[arg(long)]
    distance: bool,
}

#[derive(Args)]
pub struct CheckArgs {
    #[command(flatten)]
    kind: CheckKind,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    gamma: u8,
    #[arg(long, value_enum, default_value_t = Variant::D)]
    variant: Variant,
    /// Enumeration guard, as log2 of the number of codewords.
    #[arg(long, default_value_t = codelat::gf2::MAX_ENUM_DIM)]
    max_enum: usize,
    path: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Variant {
    D,
    Dprime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    A,
    D,
    Dprime,
    Cf,
    Aprime,
    Azq,
}

#[derive(Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    /// `auto` or a file of basis rows in code-file format.
    #[arg(long, default_value = "auto")]
    basis: String,
    /// Modulus for `azq`.
    #[arg(long)]
    q: Option<u64>,
    /// Also write the lattice to this file.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Enumeration guard, as log2 of the number of codewords.
    #[arg(long, default_value_t = codelat::gf2::MAX_ENUM_DIM)]
    max_enum: usize,
    path: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Scenario {
    Example1,
    Simplex15,
    Example4,
    Bw16,
    E8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => commands::check(&args),
        Command::Build(args) => commands::build(&args),
        Command::Compare { first, second } => commands::compare(&first, &second),
        Command::Examples { name } => scenarios::run(name),
    };
    match result {
        Ok((report, holds)) => {
            print!("{}", report.render());
            if holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
