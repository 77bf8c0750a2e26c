use clap::Parser;
use jordanforge::cli::{run, Cli, EXIT_ERROR};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("JORDANFORGE_LOG")).init();
    let cfg = Cli::parse().into_config();
    let code = match run(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    };
    std::process::exit(code);
}
