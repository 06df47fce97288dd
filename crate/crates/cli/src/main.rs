use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = appell4_cli::run(std::env::args_os());
    if let Some(report) = &outcome.report {
        let mut out = std::io::stdout().lock();
        if out.write_all(report.as_bytes()).is_err() {
            return ExitCode::from(2);
        }
    }
    if let Some(msg) = &outcome.message {
        eprint!("{msg}");
        if !msg.ends_with('\n') {
            eprintln!();
        }
    }
    ExitCode::from(outcome.code as u8)
}
