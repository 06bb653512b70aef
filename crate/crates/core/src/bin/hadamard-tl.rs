use std::io::Write;
use std::process::ExitCode;

use hadamard_tl::cli::dispatch;

fn main() -> ExitCode {
    let outcome = dispatch(std::env::args_os());
    if !outcome.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.stdout.as_bytes());
        let _ = out.flush();
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code as u8)
}
