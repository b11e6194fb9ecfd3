use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sparsemult::{exit, run, table, Command, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(name = "sparsemult", version, about = "Isolated zeros of generic sparse systems: counts and multiplicities")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Augmentation parameter (defaults to MV(A^0) - MV(A) + 1).
    #[arg(long = "M", global = true)]
    m: Option<u64>,
    /// Base seed for random instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Coefficients are drawn from [-bound, bound] without 0.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Seeded instances per checked zero.
    #[arg(long, global = true)]
    trials: Option<u32>,
    /// Largest order of multiplicity matrix tried by the oracle.
    #[arg(long, global = true)]
    kmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conditions H1-H3 and the valid strata.
    Check { input: Option<PathBuf> },
    /// Multiplicity of the origin by every route.
    Mult0 { input: Option<PathBuf> },
    /// Zero counts and multiplicities on every stratum.
    Census { input: Option<PathBuf> },
    /// Engine values against the dual-space oracle.
    Verify { input: Option<PathBuf> },
}

fn read_input(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SPARSEMULT_LOG", "warn")).init();
    let cli = Cli::parse();
    let (command, path) = match &cli.command {
        Cmd::Check { input } => (Command::Check, input),
        Cmd::Mult0 { input } => (Command::Mult0, input),
        Cmd::Census { input } => (Command::Census, input),
        Cmd::Verify { input } => (Command::Verify, input),
    };
    let text = match read_input(path.as_ref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(exit::INPUT as u8);
        }
    };
    let flags = Options { m: cli.m, seed: cli.seed, bound: cli.bound, trials: cli.trials, kmax: cli.kmax };
    let doc = run(command, &text, &flags);
    match cli.format {
        Format::Json => print!("{}", doc.to_json()),
        Format::Table => print!("{}", table::render(&doc)),
    }
    if let Some(e) = &doc.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(doc.exit_status as u8)
}
