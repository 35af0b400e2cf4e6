use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Report {
    pub command: String,
    pub text: String,
    pub data: Value,
    pub exit_code: u8,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    version: u32,
    command: &'a str,
    exit_code: u8,
    data: &'a Value,
}

impl Report {
    pub fn new(command: &str, text: String, data: impl Serialize, exit_code: u8) -> Result<Self> {
        Ok(Report { command: command.to_string(), text, data: serde_json::to_value(data)?, exit_code })
    }

    pub fn json(&self) -> Result<String> {
        let env = Envelope {
            schema: "slopesmith-report",
            version: SCHEMA_VERSION,
            command: &self.command,
            exit_code: self.exit_code,
            data: &self.data,
        };
        let mut s = serde_json::to_string_pretty(&env)?;
        s.push('\n');
        Ok(s)
    }

    /// Writes the text to `path` and the JSON to `path` with a `.json`
    /// extension.
    pub fn write(&self, path: &Path) -> Result<()> {
        let json_path = json_path(path)?;
        fs::write(path, &self.text).with_context(|| format!("writing {}", path.display()))?;
        fs::write(&json_path, self.json()?).with_context(|| format!("writing {}", json_path.display()))?;
        Ok(())
    }
}

pub fn json_path(path: &Path) -> Result<PathBuf> {
    let p = path.with_extension("json");
    if p == path {
        bail!("--out {} would collide with its JSON copy; use another extension", path.display());
    }
    Ok(p)
}
