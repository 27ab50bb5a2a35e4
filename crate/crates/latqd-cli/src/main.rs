use clap::Parser;

fn main() {
    let cli = latqd_cli::args::Cli::parse();
    std::process::exit(latqd_cli::run(cli));
}
