use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mfk::exec::run_session;
use mfk::report::{SCHEMA, VERSION};
use mfk::session::parse_session;
use mfk::suites::{run_suite, SuiteOptions, SUITES};
use mfk_core::ring::MonomialOrder;
use serde_json::json;

#[derive(Parser)]
#[command(name = "mfk", version, about = "Exact checks for 2-periodic complexes and localized K-classes")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Monomial order for every ring (overrides session declarations).
    #[arg(long, global = true, value_parser = ["degrevlex", "lex"])]
    order: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 20)]
    count: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include per-instance wall-clock times (reports are then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every command of a session file.
    Run { file: PathBuf },
    /// Print the canonical form of a session file.
    Echo { file: PathBuf },
    /// Run a generated suite, or `all`.
    Verify { suite: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read(file: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `Ok(true)` when every verdict holds.
fn run(cli: &Cli) -> Result<bool, String> {
    let order = cli.order.as_deref().map(|o| MonomialOrder::parse(o).expect("validated by clap"));
    match &cli.command {
        Cmd::Echo { file } => {
            let s = parse_session(&read(file)?, order).map_err(|e| format!("{}: {e}", file.display()))?;
            emit(cli, &s.echo())?;
            Ok(true)
        }
        Cmd::Run { file } => {
            let s = parse_session(&read(file)?, order).map_err(|e| format!("{}: {e}", file.display()))?;
            let outcomes = run_session(&s).map_err(|e| format!("{}: {e}", file.display()))?;
            let ok = outcomes.iter().all(|o| o.verdict != Some(false));
            let text = match cli.format {
                Format::Json => {
                    let v = json!({ "schema": SCHEMA, "tool": "mfk", "version": VERSION, "passed": ok, "commands": outcomes });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
                Format::Text => {
                    let mut t = String::new();
                    for o in &outcomes {
                        t.push_str(&format!("> {}\n", o.command));
                        for l in &o.text {
                            t.push_str(&format!("  {l}\n"));
                        }
                    }
                    t
                }
            };
            emit(cli, &text)?;
            Ok(ok)
        }
        Cmd::Verify { suite } => {
            let opts = SuiteOptions { seed: cli.seed, count: cli.count, order: order.unwrap_or(MonomialOrder::DegRevLex), timings: cli.timings };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for n in names {
                reports.push(run_suite(n, &opts).ok_or_else(|| format!("unknown suite {n}; expected one of {} or all", SUITES.join(", ")))?);
            }
            let ok = reports.iter().all(|r| r.all_passed());
            let text = match cli.format {
                Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
                Format::Json => serde_json::to_string_pretty(&reports).expect("serializes") + "\n",
                Format::Text => reports.iter().map(|r| r.to_text()).collect(),
            };
            emit(cli, &text)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("mfk: {e}");
            ExitCode::from(2)
        }
    }
}
