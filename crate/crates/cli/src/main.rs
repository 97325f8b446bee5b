mod commands;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use prodinv_core::solver::OracleLimits;
use prodinv_core::PISituation;

use commands::{Output, Settings};

#[derive(Parser)]
#[command(name = "prodinv", version, about = "Cost allocation for production-inventory situations")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest total demand the brute-force oracle will enumerate.
    #[arg(long, global = true, default_value_t = OracleLimits::default().max_units)]
    max_oracle_units: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cost, dual prices and a production plan of one coalition.
    Solve {
        situation: PathBuf,
        /// Comma-separated 1-based player indices; defaults to all players.
        #[arg(long)]
        coalition: Option<String>,
    },
    /// Cost of every coalition.
    Game { situation: PathBuf },
    /// The Owen point.
    Owen { situation: PathBuf },
    /// Whether an allocation lies in the core.
    Core {
        situation: PathBuf,
        /// Comma-separated amounts, one per player.
        #[arg(long, allow_hyphen_values = true)]
        alloc: String,
    },
    /// The dual-price allocation scheme and its validity.
    Pmas { situation: PathBuf },
    /// Essential players with witnesses.
    Essential { situation: PathBuf },
    /// Sum of two situations on the same players.
    Combine {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Situation realizing a 0-monotone simple veto game.
    FromVeto {
        game: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Axiom verdicts for the built-in rules.
    Axioms {
        situation: PathBuf,
        /// Only report this rule.
        #[arg(long)]
        rule: Option<String>,
    },
    /// Closed-form costs against the brute-force oracle and the LP.
    Verify { situation: PathBuf },
}

fn load_situation(path: &Path) -> Result<PISituation> {
    let validated = io::situation_from_json(&io::read_json(path)?)?;
    for w in &validated.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(validated.situation)
}

/// Writes `sit` to `path`, or prints it when no path is given.
fn emit_situation(sit: &PISituation, path: Option<&Path>, out: &mut Output) -> Result<()> {
    match path {
        Some(p) => {
            io::write_json(p, &io::situation_to_json(sit))?;
            out.text.push_str(&format!("written to {}\n", p.display()));
        }
        None => {
            out.text.push_str(&io::render(&io::situation_to_json(sit)));
            out.text.push('\n');
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output> {
    let settings = Settings {
        seed: cli.seed,
        oracle: OracleLimits { max_units: cli.max_oracle_units, ..OracleLimits::default() },
    };
    match &cli.command {
        Command::Solve { situation, coalition } => {
            let sit = load_situation(situation)?;
            let s = coalition.as_deref().map(|c| io::parse_coalition(c, sit.n())).transpose()?;
            if s.is_some_and(|s| s.is_empty()) {
                anyhow::bail!("the coalition must contain at least one player");
            }
            commands::solve(&sit, s)
        }
        Command::Game { situation } => commands::game(&load_situation(situation)?),
        Command::Owen { situation } => commands::owen(&load_situation(situation)?),
        Command::Core { situation, alloc } => {
            let sit = load_situation(situation)?;
            commands::core(&sit, &commands::parse_allocation(alloc, sit.n())?)
        }
        Command::Pmas { situation } => commands::scheme(&load_situation(situation)?),
        Command::Essential { situation } => commands::essential(&load_situation(situation)?),
        Command::Combine { first, second, output } => {
            let (mut out, combined) = commands::combine(&load_situation(first)?, &load_situation(second)?)?;
            emit_situation(&combined, output.as_deref(), &mut out)?;
            Ok(out)
        }
        Command::FromVeto { game, output } => {
            let g = io::game_from_json(&io::read_json(game)?)?;
            let (mut out, sit) = commands::from_veto(&g)?;
            emit_situation(&sit, output.as_deref(), &mut out)?;
            Ok(out)
        }
        Command::Axioms { situation, rule } => commands::axioms(&load_situation(situation)?, rule.as_deref(), &settings),
        Command::Verify { situation } => commands::verify(&load_situation(situation)?, &settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", io::render(&out.json));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
