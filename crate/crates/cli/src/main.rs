use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use twocat_cli::{load, run, Options};

/// Run a twocat command over a JSON workspace.
#[derive(Debug, Parser)]
#[command(name = "twocat", version)]
struct Cli {
    /// One of validate, check-pseudomonad, check-algebra, check-morphism, hom,
    /// descent, lax-descent, verify-prop-descent, build-tzy, normalize-2cell,
    /// preorder-leq, kleisli, strictify, verify-codescent.
    command: String,
    /// Names of workspace definitions the command acts on.
    args: Vec<String>,
    #[arg(long)]
    input: PathBuf,
    /// Rewrite budget (strictify, verify-codescent) or search budget (preorder-leq).
    #[arg(long)]
    budget: Option<usize>,
    /// Probe categories for verify-codescent, by workspace name.
    #[arg(long, value_delimiter = ',')]
    probes: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

// exit codes: 0 pass, 1 fail, 2 undecided, 3 invocation or input error
fn main() -> ExitCode {
    let cli = Cli::parse();
    let ws = match load(&cli.input) {
        Ok(ws) => ws,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let opts = Options { budget: cli.budget, probes: cli.probes };
    let report = match run(&ws, &cli.command, &cli.args, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let text = report.to_json();
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.status.exit_code() as u8)
}
