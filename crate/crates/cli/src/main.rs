use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = tcl_cli::run(std::env::args_os());
    if let Some(out) = &outcome.stdout {
        print!("{out}");
    }
    if let Some(err) = &outcome.stderr {
        eprint!("{err}");
    }
    ExitCode::from(outcome.code as u8)
}
