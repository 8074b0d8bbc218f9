use clap::Parser;
use frobsum::runner::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}
