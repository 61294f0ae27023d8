use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use ncomp_cli::commands::{render_json, render_text, run, Cli, Ctx};
use ncomp_cli::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if std::env::args().any(|a| a == "--json") {
                let err = CliError::Parse(e.kind().to_string());
                eprintln!("{}", err.to_json());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    let outcome = Ctx::new(&cli).and_then(|ctx| run(&cli.command, &ctx).map(|result| (ctx, result)));
    match outcome {
        Ok((ctx, result)) => {
            if cli.json {
                println!("{}", render_json(&cli.command, &ctx, result));
            } else {
                print!("{}", render_text(&cli.command, &ctx, &result));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
