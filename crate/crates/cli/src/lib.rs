//! `lgmirror`: one batch command per pipeline, each ending in a list of
//! pass/fail verdicts. The process exits 0 exactly when every verdict passes.

mod args;
mod commands;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;

pub use args::{Cli, Command, ModelKind, VerifyCommand};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    /// Milliseconds per stage, plus `total`.
    pub timings: BTreeMap<String, f64>,
    /// Command-specific payload.
    pub data: serde_json::Value,
    /// Human-readable lines printed before the verdicts.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            verdicts: Vec::new(),
            timings: BTreeMap::new(),
            data: serde_json::Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn input(&mut self, k: &str, v: impl ToString) {
        self.inputs.insert(k.to_string(), v.to_string());
    }

    pub fn verdict(&mut self, check: &str, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { check: check.to_string(), pass, detail: detail.into() });
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Run `f`, recording its wall time under `stage`.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.insert(stage.to_string(), t.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn passed(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn verdict_named(&self, check: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.check == check)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            let _ = writeln!(s, "{l}");
        }
        for v in &self.verdicts {
            let _ = writeln!(s, "{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.check, v.detail);
        }
        if let Some(t) = self.timings.get("total") {
            let _ = writeln!(s, "time {:.1} ms", t);
        }
        s
    }
}

/// Parse `argv` (program name first), run the command and write the JSON
/// report if `--json` was given. Usage errors exit with status 2.
pub fn run<S: AsRef<str>>(argv: &[S]) -> (RunReport, i32) {
    let argv: Vec<&str> = argv.iter().map(|s| s.as_ref()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let mut r = RunReport::new("usage");
            r.line(e.render().to_string());
            let help = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            r.verdict("arguments", help, if help { "help requested" } else { "could not parse the command line" });
            let code = if help { 0 } else { 2 };
            return (r, code);
        }
    };
    let start = Instant::now();
    let mut report = commands::dispatch(&cli.command);
    report.timings.insert("total".into(), start.elapsed().as_secs_f64() * 1e3);
    if let Some(path) = &cli.json {
        let written = serde_json::to_string_pretty(&report)
            .map_err(|e| e.to_string())
            .and_then(|j| std::fs::write(path, j + "\n").map_err(|e| e.to_string()));
        if let Err(e) = written {
            report.verdict("json output", false, format!("{}: {e}", path.display()));
        }
    }
    let code = report.exit_code();
    (report, code)
}
