use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rigidkit::{run_scenario, Analysis, Scenario};

#[derive(Parser)]
#[command(name = "rigidkit", version, about = "Root systems, rigidity checks and cycle functionals from scenario files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and emit its report.
    Run {
        scenario: PathBuf,
        /// Comma-separated analyses overriding the scenario list.
        #[arg(long, value_delimiter = ',')]
        analysis: Option<Vec<Analysis>>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a scenario parses.
    Validate { scenario: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Validate { scenario } => match Scenario::load(&scenario) {
            Ok((s, _)) => {
                println!("ok: {}", s.name);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        },
        Command::Run { scenario, analysis, format, out } => {
            let (s, bytes) = match Scenario::load(&scenario) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let report = run_scenario(&s, &bytes, analysis.as_deref());
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
