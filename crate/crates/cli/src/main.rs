use std::io::Write;
use std::process::ExitCode;

use icmod_core::DEFAULT_MARGIN;

const MARGIN_VAR: &str = "ICM_TRUNCATION_MARGIN";

fn main() -> ExitCode {
    let margin = match std::env::var(MARGIN_VAR) {
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(m) => m,
            Err(_) => {
                eprintln!("error: {MARGIN_VAR} must be a nonnegative integer, got {v:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => DEFAULT_MARGIN,
    };
    let (code, stdout, stderr) = icmod_cli::run(std::env::args_os(), margin);
    if !stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{}", stdout.trim_end());
    }
    if !stderr.is_empty() {
        eprintln!("{}", stderr.trim_end());
    }
    ExitCode::from(code as u8)
}
