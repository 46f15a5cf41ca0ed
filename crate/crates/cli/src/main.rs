mod args;
mod run;

use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = args::Cli::parse();
    if let Err(err) = run::execute(cli.command) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
