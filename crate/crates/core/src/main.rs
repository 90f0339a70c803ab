use clap::Parser;

fn main() {
    let cli = dsr::cli::Cli::parse();
    std::process::exit(dsr::cli::run(cli));
}
