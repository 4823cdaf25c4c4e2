use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use elw_lab::{execute, parse_threads, Command, Invocation, THREADS_ENV};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Payoffs,
    SweepEntropy,
    Counter,
    Verify,
    Search,
    DemoTheorem,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Payoffs => Command::Payoffs,
            Cmd::SweepEntropy => Command::SweepEntropy,
            Cmd::Counter => Command::Counter,
            Cmd::Verify => Command::Verify,
            Cmd::Search => Command::Search,
            Cmd::DemoTheorem => Command::DemoTheorem,
        }
    }
}

/// Experiments on two-player ELW quantum games.
#[derive(Debug, Parser)]
#[command(name = "elw-lab", version, about)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,

    /// JSON experiment configuration
    #[arg(long)]
    config: PathBuf,

    /// Overrides solver.seed
    #[arg(long)]
    seed: Option<u64>,

    /// Overrides output.path; without either the report goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = parse_threads(std::env::var(THREADS_ENV).ok().as_deref()).and_then(|threads| {
        let inv = Invocation {
            config: args.config,
            seed: args.seed,
            out: args.out,
            threads,
        };
        execute(args.command.into(), &inv)
    });
    match result {
        Ok(r) => {
            if r.path.is_none() {
                let mut stdout = std::io::stdout().lock();
                if stdout
                    .write_all(&r.body)
                    .and_then(|_| stdout.flush())
                    .is_err()
                {
                    return ExitCode::from(1);
                }
            }
            if let Some(s) = r.summary {
                eprintln!("{s}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("elw-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
