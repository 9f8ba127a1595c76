use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use classop_cli::{output_path, render, run, Cli, CliError, REPORT_SCHEMA};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            let doc = serde_json::json!({
                "schema": REPORT_SCHEMA,
                "command": cli.command.name(),
                "error": err.to_string(),
            });
            eprintln!("{doc}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let report = run(&cli.command)?;
    let text = render(&report, cli.command.args().format)?;
    match output_path(&cli.command) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.to_path_buf(), source })?;
            }
            std::fs::write(&path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
            eprintln!("{} {}: wrote {}", report.command, if report.pass { "passed" } else { "FAILED" }, path.display());
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
        }
    }
    Ok(report.pass)
}
