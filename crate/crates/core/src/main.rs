use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let response = lexorder::cli::run(std::env::args_os(), &mut io::stdin().lock());
    let mut stdout = io::stdout().lock();
    if stdout
        .write_all(response.output.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::from(response.exit_code() as u8)
}
