mod commands;
mod document;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use idexp::{fixtures, Error};
use serde_json::{json, Value};

use commands::{Command, Settings};
use document::Document;

const DEFAULT_DEGREE_BOUND: u32 = 64;
const DEFAULT_SEARCH_DEPTH: usize = 3;

/// Exact invariants of weighted polynomial ideals at the origin.
///
/// Reads a JSON problem document from INPUT (or standard input) and writes a
/// JSON report to standard output.
#[derive(Parser, Debug)]
#[command(name = "idexp", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Problem document; `-` or omitted reads standard input.
    input: Option<PathBuf>,
    /// Truncation degree for power-series computations.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Script length bound for `probe-equiv`.
    #[arg(long)]
    search_depth: Option<usize>,
    /// Where `plot` writes its SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Use a built-in problem instead of a document.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::Parse { .. } => "parse",
        Error::Precondition(_) => "precondition",
        Error::UnsupportedCharacteristic(_) => "unsupported-characteristic",
        Error::Undetermined(_) => "undetermined",
    }
}

fn print(report: &Value) {
    let text = serde_json::to_string_pretty(report).expect("serializable");
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn read_document(cli: &Cli) -> idexp::Result<Document> {
    if let Some(name) = &cli.fixture {
        let f = fixtures::by_name(name)?;
        return Ok(Document::from_fixture(&f, fixtures::partner(name).as_ref()));
    }
    let mut text = String::new();
    match cli.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Error::Input(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        }
    }
    Document::from_json(&text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let name = cli.command.name();
    let fail = |input: Value, e: Error| {
        print(&json!({
            "command": name,
            "input": input,
            "error": { "kind": kind(&e), "message": e.to_string() },
        }));
        ExitCode::from(if e.is_honest_failure() { 2 } else { 1 })
    };

    let mut doc = match read_document(&cli) {
        Ok(d) => d,
        Err(e) => return fail(Value::Null, e),
    };
    let settings = Settings {
        degree_bound: cli.degree_bound.or(doc.options.degree_bound).unwrap_or(DEFAULT_DEGREE_BOUND),
        search_depth: cli.search_depth.or(doc.options.search_depth).unwrap_or(DEFAULT_SEARCH_DEPTH),
        svg: cli.svg.clone(),
    };
    doc.options.degree_bound = Some(settings.degree_bound);
    doc.options.search_depth = Some(settings.search_depth);

    let problem = match doc.resolve() {
        Ok(p) => p,
        Err(e) => return fail(serde_json::to_value(&doc).expect("serializable"), e),
    };
    let input = serde_json::to_value(&problem.normalized).expect("serializable");
    match commands::run(cli.command, &problem, &settings) {
        Ok(out) => {
            let mut report = json!({ "command": name, "input": input, "result": out.result });
            let code = match out.honest_failure {
                Some(reason) => {
                    report["status"] = json!({ "kind": "undetermined", "message": reason });
                    2
                }
                None => 0,
            };
            print(&report);
            ExitCode::from(code)
        }
        Err(e) => fail(input, e),
    }
}
