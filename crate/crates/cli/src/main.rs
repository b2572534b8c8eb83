use clap::Parser;
use topotip_cli::{run, Cli};

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        eprintln!("{}", e.machine_line());
        std::process::exit(e.exit_code());
    }
}
