use clap::Parser;

use phytozoo::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    if let Err(err) = run(cli, &mut stdout) {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}
