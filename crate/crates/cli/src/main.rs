use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use qrank_cli::task::parse_failure;
use qrank_cli::{render, run_command, run_document, Command};
use qrank_core::config::Budget;
use qrank_core::Error;

#[derive(Parser)]
#[command(name = "qrank", version, about = "Lascar ranks of companion-matrix group presentations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a task file: one {"command", "payload"} object or an array of them.
    Run(Io),
    /// Rank of a presentation via its hereditary factorization.
    Rank(Io),
    /// Rank in the reduct to τ with τ^n = σ.
    ReductRank(Io),
    /// Hereditary factorization with certificates.
    Hereditary(Io),
    /// Necessary conditions for minimality and one-basedness.
    Validate(Io),
    /// Prolongation to the presentation of P(x^n).
    Prolong(Io),
    /// Rank bound from a degree ratio.
    DegreeBound(Io),
    /// Rank of a fixed field twisted by a Frobenius power.
    FixedField(Io),
    /// Factor counts of P(x^n) by direct factorization.
    Oracle(Io),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Io {
    /// Input JSON file; stdin when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long)]
    pretty: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (io, command) = match cli.command {
        Cmd::Run(io) => (io, None),
        Cmd::Rank(io) => (io, Some(Command::Rank)),
        Cmd::ReductRank(io) => (io, Some(Command::ReductRank)),
        Cmd::Hereditary(io) => (io, Some(Command::Hereditary)),
        Cmd::Validate(io) => (io, Some(Command::Validate)),
        Cmd::Prolong(io) => (io, Some(Command::Prolong)),
        Cmd::DegreeBound(io) => (io, Some(Command::DegreeBound)),
        Cmd::FixedField(io) => (io, Some(Command::FixedField)),
        Cmd::Oracle(io) => (io, Some(Command::Oracle)),
    };

    let (report, status) = match Budget::from_env() {
        Err(e) => parse_failure(Value::Null, command, e, &Budget::default()),
        Ok(budget) => match read_input(&io.input) {
            Err(e) => parse_failure(Value::Null, command, Error::Parse(format!("cannot read input: {e}")), &budget),
            Ok(text) => match serde_json::from_str::<Value>(&text) {
                Err(e) => parse_failure(Value::Null, command, Error::Parse(format!("invalid JSON: {e}")), &budget),
                Ok(doc) => match command {
                    Some(c) => run_command(c, &doc, &budget),
                    None => run_document(&doc, &budget),
                },
            },
        },
    };

    let mut text = match io.format {
        Format::Text => render::render(&report),
        Format::Json if io.pretty => serde_json::to_string_pretty(&report).expect("report serializes"),
        Format::Json => serde_json::to_string(&report).expect("report serializes"),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let written = match &io.output {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("qrank: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(u8::try_from(status.exit_code()).unwrap_or(1))
}
