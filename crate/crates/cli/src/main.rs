use std::io;
use std::process::ExitCode;

use clap::Parser;
use qkb_cli::{run, Cli};

#[tokio::main]
async fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli, &mut io::stdout().lock(), &mut io::stderr().lock()).await;
    code.into()
}
