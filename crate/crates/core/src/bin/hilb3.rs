use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("HILB3_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("warning: could not configure thread pool: {e}");
                }
            }
            _ => {
                eprintln!("error: HILB3_THREADS must be a positive integer, got '{v}'");
                return ExitCode::from(2);
            }
        }
    }
    let out = hilb3::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
