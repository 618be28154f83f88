use clap::Parser;

fn main() {
    let cli = dabir::cli::Cli::parse();
    std::process::exit(dabir::cli::run(cli));
}
