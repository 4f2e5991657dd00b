use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let res = helixlab_cli::dispatch(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(res.stdout.as_bytes());
    let _ = std::io::stderr().write_all(res.stderr.as_bytes());
    ExitCode::from(res.code as u8)
}
