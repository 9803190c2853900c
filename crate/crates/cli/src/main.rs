use std::io::Read;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    // read stdin only when some payload asks for it
    let wants_stdin = argv.iter().any(|a| a == "-");
    let stdin_text = if wants_stdin {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).ok();
        Some(buf)
    } else {
        None
    };
    let out = as2trees_cli::run(&argv, stdin_text.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
