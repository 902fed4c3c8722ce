use clap::Parser;
use logcoh_cli::{init_threads, run, Cli};

fn main() {
    let cli = Cli::parse();
    init_threads();
    let report = run(&cli);
    if !cli.quiet {
        eprint!("{}", report.to_table());
    }
    let json = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => print!("{json}"),
    }
    std::process::exit(report.verdict.exit_code());
}
