fn main() {
    let (text, code) = vtwist::cli::run(std::env::args_os());
    print!("{text}");
    std::process::exit(code);
}
