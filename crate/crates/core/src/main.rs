use std::process::ExitCode;

fn main() -> ExitCode {
    calsim::cli::main_with_args(std::env::args_os())
}
