//! `lieatom`: command-line front end for the verification suites.
//!
//! Exit status is 0 when every check passes, 1 when some check fails and 2
//! on usage or input errors.

mod complex;
mod deform;
mod report;
mod series;
mod util;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::RunReport;

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Parser)]
#[command(name = "lieatom", version, about = "Exact checks for Lie atoms, their Jacobi-Bernoulli complexes and deformations")]
struct Cli {
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Bernoulli series identities, exact to a truncation order.
    Bernoulli(series::BernoulliArgs),
    /// Free Lie algebra identities and atom files.
    Lie {
        #[command(subcommand)]
        cmd: LieCmd,
    },
    /// Build the Jacobi-Bernoulli complex of an atom file and analyse it.
    Complex(complex::ComplexArgs),
    /// Composite differentials of seeded random nilpotent Lie pairs.
    RandomPairs(complex::RandomPairsArgs),
    /// Stock example families.
    Examples {
        #[command(subcommand)]
        cmd: ExampleCmd,
    },
    /// Maurer-Cartan, compatibility, intertwining and Kodaira-Spencer data of
    /// a deformation file.
    Mc(deform::McArgs),
    /// Seeded deformation suite: obstruction, abelian degenerations,
    /// intertwining, gauge orbits, Campbell-Hausdorff and orbit closure.
    KsSuite(deform::KsSuiteArgs),
}

#[derive(Subcommand)]
enum LieCmd {
    /// Iterated-bracket identities in the free nilpotent algebra on a1, a2, b.
    Verify(series::LieVerifyArgs),
    /// Structure and adjoint-filtration checks for an atom file.
    Check(complex::LieCheckArgs),
}

#[derive(Subcommand)]
enum ExampleCmd {
    /// Intertwining algebra of a coordinate inclusion Q^s -> Q^a.
    Grassmannian(complex::GrassmannianArgs),
    /// Stock quasi-isomorphic pairs of atoms.
    QuasiIso(complex::QuasiIsoArgs),
    /// Rings of the line pair and the quasi-trivial pair.
    Rings(complex::RingsArgs),
}

/// Options shared by the randomized suites.
pub struct Common {
    pub seed: u64,
}

fn run(cli: &Cli, rep: &mut RunReport) -> anyhow::Result<()> {
    let common = Common { seed: cli.seed };
    match &cli.command {
        Command::Bernoulli(a) => series::bernoulli(a, rep),
        Command::Lie { cmd: LieCmd::Verify(a) } => series::lie_verify(a, rep),
        Command::Lie { cmd: LieCmd::Check(a) } => complex::lie_check(a, rep),
        Command::Complex(a) => complex::complex(a, rep),
        Command::RandomPairs(a) => complex::random_pairs(a, &common, rep),
        Command::Examples { cmd: ExampleCmd::Grassmannian(a) } => complex::grassmannian(a, rep),
        Command::Examples { cmd: ExampleCmd::QuasiIso(a) } => complex::quasi_iso(a, rep),
        Command::Examples { cmd: ExampleCmd::Rings(a) } => complex::rings(a, rep),
        Command::Mc(a) => deform::mc(a, rep),
        Command::KsSuite(a) => deform::ks_suite(a, &common, rep),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("lieatom".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let mut rep = RunReport::new(echo);
    let start = Instant::now();
    if let Err(e) = run(&cli, &mut rep) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if cli.timing {
        rep.timing_ms = Some(start.elapsed().as_millis());
    }
    let failed = rep.failed();
    let text = match cli.format {
        Format::Json => rep.render_json(),
        Format::Plain => rep.render_plain(),
    };
    println!("{text}");
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
