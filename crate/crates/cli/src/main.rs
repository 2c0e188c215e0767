use std::process::ExitCode;

fn main() -> ExitCode {
    aversion::run(std::env::args_os())
}
