use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FLOWROUTE_LOG", "warn")).init();
    ExitCode::from(flowroute::cli::run(std::env::args_os()) as u8)
}
