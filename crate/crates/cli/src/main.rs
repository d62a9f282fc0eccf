use clap::Parser;
use dqp_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(dqp_cli::execute(&cli));
}
