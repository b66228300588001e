use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use soulcert::obstruction::DEFAULT_BUDGET;
use soulcert::script::{format_records, run_text, RunOptions};

/// Runs an obstruction script and prints one record per query.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Script file; standard input when absent or `-`.
    script: Option<PathBuf>,
    /// Maximum number of monomials the restriction search may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Cover multiplier for `realize` statements that do not give one.
    #[arg(long, default_value_t = 1)]
    cover_m: u64,
    /// Omit generator and note lines.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match args.script.as_deref().filter(|p| p.as_os_str() != "-") {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("stdin: {e}"))
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("soulcert: {e}");
            return ExitCode::from(1);
        }
    };
    let opts = RunOptions { budget: args.budget, cover_m: args.cover_m, quiet: args.quiet };
    let outcome = run_text(&text, &opts);
    print!("{}", format_records(&outcome.records));
    match outcome.error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("soulcert: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
