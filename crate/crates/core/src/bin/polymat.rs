use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polymat::io::{run_factorize, run_verify, JobSpec, OrderChoice, ResultDoc};

#[derive(Parser)]
#[command(
    name = "polymat",
    about = "Factor-prime factorization of multivariate polynomial matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Degrevlex,
}

#[derive(Subcommand)]
enum Command {
    /// Run the factorization pipeline on a job file and emit the result JSON
    Factorize {
        /// Path to the job file (JSON)
        job: PathBuf,
        /// Write the result document here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep every certified factorization, not only the maximal ones
        #[arg(long)]
        all_factorizations: bool,
        /// Factor-right-prime mode (factorize the transpose)
        #[arg(long)]
        frp: bool,
        /// Monomial order (overrides the job file)
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
    },
    /// Independently re-check a result document
    Verify {
        /// Path to the result file (JSON)
        result: PathBuf,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch() -> polymat::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Factorize { job, out, all_factorizations, frp, order } => {
            let text = fs::read_to_string(&job)?;
            let mut job: JobSpec = serde_json::from_str(&text).map_err(polymat::Error::Json)?;
            if all_factorizations {
                job.options.all_factorizations = true;
            }
            if frp {
                job.options.frp = true;
            }
            if let Some(o) = order {
                job.options.order = match o {
                    OrderArg::Lex => OrderChoice::Lex,
                    OrderArg::Degrevlex => OrderChoice::DegRevLex,
                };
            }
            let doc = run_factorize(&job)?;
            let json = doc.to_json()?;
            match out {
                Some(path) => fs::write(path, json + "\n")?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { result } => {
            let text = fs::read_to_string(&result)?;
            let doc = ResultDoc::from_json(&text)?;
            let ok = run_verify(&doc)?;
            println!("verified: {ok}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
