fn main() {
    let (code, text) = cycle_goodness::cli::run_args(std::env::args_os());
    if code == 2 {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    std::process::exit(code);
}
