use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ensemblelab::cli::main(std::env::args_os()))
}
