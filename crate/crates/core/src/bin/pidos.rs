use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pidos::cli::{self, CliError, Options, Outcome, OutputFormat};

#[derive(Parser)]
#[command(name = "pidos", version, about = "Closed-form Cauchy problems for completely reducible PDEs")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Series truncation order for the oracle checks
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Seed for randomized probing
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Rewrite step budget
    #[arg(long, global = true, default_value_t = pidos::operator::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and print u with its state and signal operators
    Solve { file: PathBuf },
    /// Solve and run every check; exit 1 when one fails
    Verify { file: PathBuf },
    /// Evaluate the solution on the grid as CSV
    Eval { file: PathBuf },
    /// Compose the two problems named in a list file
    Compose { file: PathBuf },
}

fn run(args: &Args) -> Result<Outcome, CliError> {
    let opts = Options {
        truncation: args.truncation,
        seed: args.seed,
        budget: args.budget,
        format: match args.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
    };
    match &args.command {
        Command::Solve { file } => cli::cmd_solve(&cli::read_problem(file)?, &opts),
        Command::Verify { file } => cli::cmd_verify(&cli::read_problem(file)?, &opts),
        Command::Eval { file } => cli::cmd_eval(&cli::read_problem(file)?, &opts),
        Command::Compose { file } => {
            let (outer, inner) = cli::read_compose(file)?;
            cli::cmd_compose(&outer, &inner, &opts)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
