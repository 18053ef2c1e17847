use std::io;

fn main() {
    if let Some(threads) = std::env::var("TYPEN_THREADS").ok().and_then(|v| v.parse().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().expect("thread pool set once");
    }
    let code = typen::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
