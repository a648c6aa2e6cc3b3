//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::instance::{parse_instances, read_instances, Instance, ProblemKind};
use crate::pipeline::{process, Settings};
use crate::record::{ResultRecord, Status};
use crate::{corpus, CliError, EXIT_INCONSISTENT, EXIT_INVALID_INPUT, EXIT_OK};

#[derive(Debug, Parser)]
#[command(name = "torricelli", version, about = "Closed-form weighted Fermat-Torricelli solver")]
struct Cli {
    /// Print a human-readable table instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    /// Residual tolerance for instances that do not set their own.
    #[arg(long, global = true, value_name = "TOL")]
    tol: Option<f64>,
    /// Attach a Weiszfeld comparison to every planar record.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Files {
    /// Instance files; `-` reads standard input.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weighted problem (kind direct2d).
    Solve(Files),
    /// Equal weights (kind classical2d).
    Classical(Files),
    /// Weights that make a planar target optimal (kind inverse2d).
    Inverse(Files),
    /// Weights that make a spatial target optimal (kind inverse3d).
    Inverse3d(Files),
    /// Any kind, always compared against the iterative oracle.
    Verify(Files),
    /// Run the built-in regression fixtures.
    Corpus,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    if let Some(tol) = cli.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            let _ = writeln!(err, "--tol must be a finite non-negative number");
            return EXIT_INVALID_INPUT;
        }
    }
    let mut settings = Settings {
        oracle: cli.oracle,
        ..Settings::default()
    };
    if let Some(tol) = cli.tol {
        settings.tolerance = tol;
    }

    let (files, kind) = match &cli.command {
        Command::Corpus => return run_corpus(out),
        Command::Solve(f) => (f, Some(ProblemKind::Direct2d)),
        Command::Classical(f) => (f, Some(ProblemKind::Classical2d)),
        Command::Inverse(f) => (f, Some(ProblemKind::Inverse2d)),
        Command::Inverse3d(f) => (f, Some(ProblemKind::Inverse3d)),
        Command::Verify(f) => {
            settings.oracle = true;
            (f, None)
        }
    };

    let items = load(&files.files, kind);
    let records: Vec<ResultRecord> = items
        .par_iter()
        .enumerate()
        .map(|(i, item)| match item {
            Ok(inst) => process(i, inst, settings),
            Err((inst, e)) => ResultRecord::failure(i, inst.clone(), e),
        })
        .collect();

    let written = if cli.pretty {
        out.write_all(pretty(&records).as_bytes())
    } else {
        records
            .iter()
            .try_for_each(|r| writeln!(out, "{}", r.to_json()))
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        let _ = writeln!(err, "cannot write output: {e}");
    }
    records.iter().map(ResultRecord::exit_code).max().unwrap_or(EXIT_OK)
}

type Item = Result<Instance, (Option<Instance>, CliError)>;

/// Reads every file in order. An unreadable file becomes a single failed
/// item; an instance of the wrong kind becomes a failed item carrying it.
fn load(paths: &[PathBuf], kind: Option<ProblemKind>) -> Vec<Item> {
    let mut items = Vec::new();
    for path in paths {
        let parsed = if path.as_os_str() == "-" {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Malformed(format!("stdin: {e}")))
                .and_then(|_| parse_instances(&text))
        } else {
            read_instances(path)
        };
        match parsed {
            Err(e) => items.push(Err((None, e))),
            Ok(list) => items.extend(list.into_iter().map(|inst| match kind {
                Some(k) if inst.kind != k => {
                    let e = CliError::Malformed(format!(
                        "instance kind {} does not match this command (expects {k})",
                        inst.kind
                    ));
                    Err((Some(inst), e))
                }
                _ => Ok(inst),
            })),
        }
    }
    items
}

fn run_corpus(out: &mut dyn Write) -> i32 {
    let outcomes = corpus::run_all();
    let _ = out.write_all(corpus::render(&outcomes).as_bytes());
    let _ = out.flush();
    if outcomes.iter().all(|o| o.passed) {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

fn pretty(records: &[ResultRecord]) -> String {
    let mut s = format!(
        "{:>4}  {:<16} {:<6} {:<9} {:<40} {:>22}  note\n",
        "#", "name", "status", "regime", "point", "value"
    );
    for r in records {
        let name = r.instance.as_ref().and_then(|i| i.name.clone()).unwrap_or_default();
        let status = match r.status {
            Status::Ok => "ok",
            Status::Error => "error",
        };
        let point = r
            .point
            .as_ref()
            .map(|p| {
                let parts: Vec<String> = p.iter().map(|c| format!("{c:.12}")).collect();
                format!("({})", parts.join(", "))
            })
            .unwrap_or_default();
        let value = r.value.map(|v| format!("{v:.15}")).unwrap_or_default();
        let note = match (&r.error, &r.weights) {
            (Some(e), _) => format!("[{}] {}", e.kind, e.message),
            (None, Some(w)) => {
                let parts: Vec<String> = w.iter().map(|c| format!("{c:.12}")).collect();
                format!("weights {}", parts.join(" : "))
            }
            (None, None) => String::new(),
        };
        s.push_str(&format!(
            "{:>4}  {:<16} {:<6} {:<9} {:<40} {:>22}  {}\n",
            r.index,
            name,
            status,
            r.regime.as_deref().unwrap_or("-"),
            point,
            value,
            note
        ));
    }
    s
}
