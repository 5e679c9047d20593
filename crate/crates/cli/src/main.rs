use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use beideal_cli::{run, Cli, Format, EXIT_INPUT};

fn main() -> ExitCode {
    // clap's own usage errors exit with 2, which here means "mismatch"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let out = run(&cli);
    let text = out.render(cli.global.format);
    if out.json.get("error").is_some() && cli.global.format == Format::Table {
        let _ = std::io::stderr().write_all(text.as_bytes());
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(out.code as u8)
}
