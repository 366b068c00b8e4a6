use clap::Parser;

use incorp::cli::{run, Cli, RunConfig};

fn main() {
    let config = RunConfig::from(Cli::parse());
    let code = run(&config, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
