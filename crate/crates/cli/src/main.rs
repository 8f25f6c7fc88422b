use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match rpaclone_cli::parse_args(std::env::args_os()) {
        Ok(config) => config,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    ExitCode::from(rpaclone_cli::run(&config) as u8)
}
