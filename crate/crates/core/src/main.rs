use clap::Parser;

fn main() {
    let cli = precip_glaw::cli::Cli::parse();
    std::process::exit(precip_glaw::cli::run(cli));
}
