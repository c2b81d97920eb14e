use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let r = nsp_cli::with_big_stack(move || nsp_cli::execute(args));
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(r.code);
}
