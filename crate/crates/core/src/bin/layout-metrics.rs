fn main() {
    std::process::exit(layout_metrics::cli::run());
}
