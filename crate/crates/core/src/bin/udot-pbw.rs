use clap::error::ErrorKind;
use clap::Parser;

use udot_pbw::cli::{run, Cli, THREADS_ENV};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let out = run(&cli);
    print!("{}", out.stdout);
    if let Some(d) = &out.diagnostic {
        eprintln!("{d}");
    }
    std::process::exit(out.code());
}
