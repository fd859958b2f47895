use clap::Parser;
use sl2orbit::cli;

fn main() {
    let args = cli::Args::parse();
    std::process::exit(cli::run(&args));
}
