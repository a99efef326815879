fn main() {
    // stderr stays unlocked so worker threads can report progress
    let code = period_lab::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
