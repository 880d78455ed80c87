use std::io::Write;

fn main() {
    let outcome = puiseux_cli::run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(outcome.code);
}
