use clap::Parser;

fn main() {
    let cli = hydrodim::cli::Cli::parse();
    std::process::exit(hydrodim::cli::run(cli));
}
