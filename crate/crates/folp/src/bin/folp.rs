use std::process::ExitCode;

use clap::Parser;
use folp::cli::{run, Cli};

/// Proof trees are processed recursively, one frame per node on a branch.
const STACK: usize = 1 << 28;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = std::thread::Builder::new()
        .stack_size(STACK)
        .spawn(|| {
            run(
                cli,
                &mut std::io::stdout().lock(),
                &mut std::io::stderr().lock(),
            )
        })
        .expect("spawn worker thread")
        .join()
        .unwrap_or(2);
    ExitCode::from(code)
}
