use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match hedonic::cli::run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("hedonic: {}", e.to_string().trim_end());
            ExitCode::from(e.exit_code())
        }
    }
}
