use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stoprule_cli::{run, Cli, EXIT_VALIDATION};

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("STOPRULE_THREADS")
        .ok()
        .and_then(|t| t.parse().ok())
    {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_VALIDATION as u8
            } else {
                0
            });
        }
    };
    let outcome = run(&cli);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
