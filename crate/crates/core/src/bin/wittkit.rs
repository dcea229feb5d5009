fn main() {
    let out = wittkit::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    if !out.stdout.ends_with('\n') && !out.stdout.is_empty() {
        println!();
    }
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
