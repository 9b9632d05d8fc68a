use clap::Parser;
use randflight_cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    run(Cli::parse())
}
