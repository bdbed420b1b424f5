use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let result = paving_cli::parse_with_config(std::env::args()).and_then(|cli| paving_cli::run(&cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("paving: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
