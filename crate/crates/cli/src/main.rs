mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command};
use commands::{InputInfo, Output};

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    argv: Vec<String>,
    version: &'static str,
    inputs: &'a [InputInfo],
    result: &'a serde_json::Value,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen(_) => "gen",
        Command::Project(_) => "project",
        Command::Metrics(_) => "metrics",
        Command::Reach(_) => "reach",
        Command::Clique(_) => "clique",
        Command::Density(_) => "density",
        Command::Components(_) => "components",
        Command::Plan(_) => "plan",
        Command::Embed(_) => "embed",
        Command::Cycles(_) => "cycles",
        Command::Girth(_) => "girth",
        Command::Faults(_) => "faults",
        Command::Compare(_) => "compare",
        Command::Audit(_) => "audit",
    }
}

fn render(cli: &Cli, output: &Output) -> String {
    if !cli.json {
        return output.text.clone();
    }
    let report = Report {
        command: command_name(&cli.command),
        argv: std::env::args().skip(1).collect(),
        version: env!("CARGO_PKG_VERSION"),
        inputs: &output.inputs,
        result: &output.result,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    text
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match commands::run(&cli.command) {
        Ok(output) => output,
        Err(failure) => {
            eprintln!("error: {failure}");
            return ExitCode::from(failure.exit_code());
        }
    };
    let text = render(&cli, &output);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if output.agreed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
