use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(airybox::cli::run())
}
