use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(whitefact::cli::main(std::env::args_os()))
}
