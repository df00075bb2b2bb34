use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperforge_cli::{self as cli, CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "hyperforge", version, about = "Exact checks for epsilon-hypersymplectic structures on Lie algebroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Jacobi identity and that every declared form is closed and nondegenerate.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify one ordered triple of declared forms.
    Classify {
        file: PathBuf,
        /// Three form names, comma-separated.
        #[arg(long)]
        triple: String,
        #[arg(long)]
        json: bool,
    },
    /// Classify every unordered triple of distinct forms, in declaration order.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run calibration plus the full identity suite on one triple.
    Selftest {
        file: PathBuf,
        #[arg(long)]
        triple: String,
        #[arg(long)]
        json: bool,
        /// Pretend the conventions fingerprint does not match this build.
        #[arg(long, hide = true)]
        simulate_corrupt_fingerprint: bool,
    },
}

fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { file, .. } => Ok(cli::validate(&cli::load(file)?)),
        Command::Classify { file, triple, .. } => {
            let names = cli::parse_triple(triple)?;
            cli::classify(&cli::load(file)?, &names)
        }
        Command::Enumerate { file, .. } => cli::enumerate(&cli::load(file)?),
        Command::Selftest { file, triple, simulate_corrupt_fingerprint, .. } => {
            let names = cli::parse_triple(triple)?;
            cli::selftest(&cli::load(file)?, &names, *simulate_corrupt_fingerprint)
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let json = match &args.command {
        Command::Validate { json, .. }
        | Command::Classify { json, .. }
        | Command::Enumerate { json, .. }
        | Command::Selftest { json, .. } => *json,
    };
    match run(&args.command) {
        Ok(outcome) => {
            if json {
                println!("{}", outcome.json());
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(cli::EXIT_INPUT as u8)
        }
    }
}
