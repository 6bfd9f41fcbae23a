use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = gridspectra::cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let code = gridspectra::cli::main_with(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
