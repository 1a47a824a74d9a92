use std::process::ExitCode;

mod commands;

fn main() -> ExitCode {
    let (code, out, err) = commands::run(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code)
}
