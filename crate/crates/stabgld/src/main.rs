use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stabgld::cli::{run, Cli};
use stabgld::AppError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let AppError::InvalidStability { violations, .. } = &e {
                for v in violations {
                    eprintln!("  {v}");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
