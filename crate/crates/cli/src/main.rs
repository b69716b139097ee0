mod commands;
mod config;
mod error;
mod output;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{Options, Settings};
use crate::error::CliError;
use crate::output::{render, Output};

/// Harder-Narasimhan and Newton strata of GL_n and its inner forms.
///
/// Cocharacters are integer lists in any order (`--mu 0,1,0`); Newton points
/// are weakly decreasing `p/q` lists (`--nu 1/2,1/2,0`). Slopes follow the
/// isocrystal convention: the basic class of B(G, mu) has constant slope
/// sum(mu)/n. Negative lists may be given as `--mu -1,0` or `--mu=-1,0`.
///
/// Exit codes: 0 success, 2 usage error, 3 input outside the domain of the
/// computation, 1 internal error or oracle mismatch.
#[derive(Parser, Debug)]
#[command(name = "hnstrat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// List B(G, mu) with the stratum invariants of every class
    Enumerate,
    /// HN types of the class nu
    Theta,
    /// Newton stratum dimension against the HN stratum bound (minuscule mu)
    Dims,
    /// Hodge-Newton decomposability of (mu, nu)
    Hnd,
    /// Whether every non-basic class of B(G, mu) is Hodge-Newton decomposable
    FullyHnd,
    /// HN types realised on the flag variety
    Dor,
    /// HN polygon of a block-scalar modification given by --instance
    HnPolygon,
    /// Weak admissibility of the Newton stratum nu of modifications of b
    Wa,
    /// Stratum invariants together with the Newton/HN index relations
    Report,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let settings = Settings::resolve(cli.options)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let out: Output = pool.install(|| match cli.command {
        Command::Enumerate => commands::enumerate(&settings),
        Command::Theta => commands::theta(&settings),
        Command::Dims => commands::dims(&settings),
        Command::Hnd => commands::hnd(&settings),
        Command::FullyHnd => commands::fully_hnd_cmd(&settings),
        Command::Dor => commands::dor(&settings),
        Command::HnPolygon => commands::hn_polygon(&settings),
        Command::Wa => commands::wa(&settings),
        Command::Report => commands::report(&settings),
    })?;
    render(&out, settings.format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
