use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let as_json = args.iter().any(|a| a == "--json");
    let result = latcomp::cli::run(args);
    let text = result.render(as_json && result.exit_code != 2);
    let out = if result.exit_code >= 2 {
        &mut std::io::stderr() as &mut dyn Write
    } else {
        &mut std::io::stdout()
    };
    let _ = out.write_all(text.as_bytes());
    std::process::exit(result.exit_code);
}
