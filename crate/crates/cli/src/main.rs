use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (output, code) = expcalc_cli::run(std::env::args());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(output.as_bytes());
    ExitCode::from(code as u8)
}
