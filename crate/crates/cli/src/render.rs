use crate::config::OutputFormat;
use crate::error::CliError;
use num_traits::{One, Signed};
use p5_algebra::{rational_to_string, Rational};
use serde::Serialize;
use serde_json::{json, Value};

/// Output of one command in every format it supports.
pub struct Rendered {
    pub command: &'static str,
    pub result: Value,
    pub passed: bool,
    pub failures: Vec<String>,
    pub pretty: String,
    pub latex: Option<String>,
    pub csv: Option<String>,
}

impl Rendered {
    pub fn new(command: &'static str, result: &impl Serialize, pretty: String) -> Result<Self, CliError> {
        Ok(Rendered {
            command,
            result: serde_json::to_value(result).map_err(|e| CliError::Output(e.to_string()))?,
            passed: true,
            failures: Vec::new(),
            pretty,
            latex: None,
            csv: None,
        })
    }

    pub fn latex(mut self, s: String) -> Self {
        self.latex = Some(s);
        self
    }

    pub fn csv(mut self, s: String) -> Self {
        self.csv = Some(s);
        self
    }

    pub fn failures(mut self, failures: Vec<String>) -> Self {
        self.passed = failures.is_empty();
        self.failures = failures;
        self
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "passed": self.passed,
            "failures": self.failures,
            "result": self.result,
        })
    }

    pub fn emit(&self, format: OutputFormat) -> Result<String, CliError> {
        let unsupported = || CliError::Usage(format!("`{}` has no {format:?} output", self.command));
        let mut out = match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.envelope()).map_err(|e| CliError::Output(e.to_string()))?,
            OutputFormat::Pretty => {
                let mut s = self.pretty.trim_end().to_string();
                if !self.passed {
                    s.push_str("\nFAILED:");
                    for f in &self.failures {
                        s.push_str("\n  ");
                        s.push_str(f);
                    }
                }
                s
            }
            OutputFormat::Latex => self.latex.clone().ok_or_else(unsupported)?,
            OutputFormat::Csv => self.csv.clone().ok_or_else(unsupported)?,
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        Ok(out)
    }
}

pub fn q_str(r: &Rational) -> String {
    rational_to_string(r)
}

/// `\frac{p}{q}` or an integer, with a leading minus sign.
pub fn tex_q(r: &Rational) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    if a.denom().is_one() {
        format!("{sign}{}", a.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

pub fn csv_lines<I: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: I) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}
