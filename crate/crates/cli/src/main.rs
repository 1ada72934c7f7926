//! `urlab`: uncertainty-relation checks, commutant searches, bipartite
//! closed forms, reproducible sweeps, and worked-example demos.
//!
//! Exit codes: 0 when every check is satisfied (degenerate counts as
//! satisfied), 2 when any check is violated, 1 on input errors.

mod commands;
mod output;
mod problem;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "urlab", version, about = "Uncertainty-relation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    Check(commands::check::CheckArgs),
    Search(commands::search::SearchArgs),
    Bipartite(commands::bipartite::BipartiteArgs),
    Sweep(commands::sweep::SweepArgs),
    Demo(commands::demo::DemoArgs),
}

fn main() {
    if let Ok(v) = std::env::var("URLAB_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let result = match &cli.command {
        Command::Check(args) => commands::check::run(args),
        Command::Search(args) => commands::search::run(args),
        Command::Bipartite(args) => commands::bipartite::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
        Command::Demo(args) => commands::demo::run(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
