use clap::Parser;
use drinfeld_cli::{init_threads, run, Cli};

fn main() {
    let cli = Cli::parse();
    init_threads();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            std::process::exit(if out.ok { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
