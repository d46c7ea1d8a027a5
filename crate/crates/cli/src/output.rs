use std::fmt;
use std::io::Write;

use clustersing::AlgebraError;
use serde_json::Value;

use crate::{Common, Format};

/// Exit statuses shared by all subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    Budget = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { status: Status::Usage, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.status as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let status = if e.is_budget() { Status::Budget } else { Status::Usage };
        CliError { status, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("bad JSON: {e}"))
    }
}

/// A rendered payload in all three formats, with the status it should exit with.
pub struct Report {
    pub json: Value,
    pub markdown: String,
    pub text: String,
    pub status: Status,
}

impl Report {
    pub fn new(json: Value, markdown: String, text: String) -> Report {
        Report { json, markdown, text, status: Status::Ok }
    }

    /// Markdown doubles as the plain-text form.
    pub fn with_markdown(json: Value, markdown: String) -> Report {
        Report { json, text: markdown.clone(), markdown, status: Status::Ok }
    }

    pub fn status(mut self, status: Status) -> Report {
        self.status = status;
        self
    }
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("millis");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

pub fn emit(common: &Common, mut report: Report) -> Result<Status, CliError> {
    if !common.timings {
        strip_timings(&mut report.json);
    }
    let mut payload = match common.format {
        Format::Json => serde_json::to_string_pretty(&report.json)?,
        Format::Md => report.markdown,
        Format::Text => report.text,
    };
    if !payload.ends_with('\n') {
        payload.push('\n');
    }
    match &common.out {
        Some(path) => std::fs::write(path, payload)?,
        None => std::io::stdout().lock().write_all(payload.as_bytes())?,
    }
    Ok(report.status)
}
