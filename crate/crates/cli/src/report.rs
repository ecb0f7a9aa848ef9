use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use qhayd_core::io::Loader;
use qhayd_core::{CheckItem, CheckReport};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// A file (or standard input, `-`) read once and fingerprinted.
pub struct Input {
    pub path: String,
    pub text: String,
    pub loader: Loader,
}

impl Input {
    pub fn read(path: &Path) -> Result<Input> {
        let shown = path.display().to_string();
        if shown == "-" {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")?;
            return Ok(Input {
                path: shown,
                text,
                loader: Loader::new(PathBuf::from(".")),
            });
        }
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {shown}"))?;
        Ok(Input {
            path: shown,
            text,
            loader: Loader::beside(path),
        })
    }

    pub fn json<T: serde::de::DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_str(&self.text).with_context(|| format!("parsing {}", self.path))
    }

    fn digest(&self) -> InputDigest {
        InputDigest {
            path: self.path.clone(),
            sha256: hex::encode(Sha256::digest(self.text.as_bytes())),
        }
    }
}

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// What a command prints: the checks it ran and an optional payload.
/// Wall-clock timing is left out so that reports are reproducible.
#[derive(Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: u8,
    #[serde(skip)]
    pub summary: String,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> RunReport {
        RunReport {
            command,
            inputs: Vec::new(),
            checks: Vec::new(),
            result: None,
            error: None,
            exit_code: 0,
            summary: String::new(),
        }
    }

    pub fn input(&mut self, input: &Input) {
        self.inputs.push(input.digest());
    }

    pub fn checks(&mut self, report: CheckReport) {
        self.checks.extend(report.items);
    }

    pub fn check(&mut self, item: CheckItem) {
        self.checks.push(item);
    }

    pub fn result(&mut self, value: impl Serialize, summary: impl Into<String>) -> Result<()> {
        self.result = Some(serde_json::to_value(value)?);
        self.summary = summary.into();
        Ok(())
    }

    pub fn finish(mut self) -> RunReport {
        self.exit_code = if self.error.is_some() {
            2
        } else if self.checks.iter().all(|c| c.passed) {
            0
        } else {
            1
        };
        self
    }

    pub fn failed(
        command: Vec<String>,
        inputs: Vec<InputDigest>,
        err: &anyhow::Error,
    ) -> RunReport {
        let mut r = RunReport::new(command);
        r.inputs = inputs;
        r.error = Some(format!("{err:#}"));
        r.finish()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in &self.inputs {
            let _ = writeln!(out, "input {} sha256:{}", i.path, &i.sha256[..16]);
        }
        out.push_str(&CheckReport::new(self.checks.clone()).to_string());
        if !self.summary.is_empty() {
            out.push_str(&self.summary);
            if !self.summary.ends_with('\n') {
                out.push('\n');
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        out
    }
}
