//! Bundled polynomials and `--poly` resolution.

use std::env;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use slopesmith::laurent::{parse_poly_file, PolyFile};
use slopesmith::Vars;

pub const CORPUS_ENV: &str = "SLOPESMITH_CORPUS";

const BUNDLED: &[(&str, &str)] = &[
    ("fig8-knot", include_str!("../corpus/fig8-knot.poly")),
    ("fig8-sister", include_str!("../corpus/fig8-sister.poly")),
];

pub struct CorpusEntry {
    pub name: String,
    pub file: PolyFile,
}

impl CorpusEntry {
    /// The `#` header lines.
    pub fn provenance(&self) -> &[String] {
        &self.file.notes
    }
}

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn parse_vars(spec: &str) -> Result<Vars> {
    match spec {
        "m,b" => Ok(Vars::mb()),
        "m,l" => Ok(Vars::ml()),
        other => bail!("--vars must be m,b or m,l, not {other:?}"),
    }
}

fn parse_text(name: &str, text: &str, vars: Option<&Vars>) -> Result<PolyFile> {
    let has_header = text.lines().any(|l| l.trim_start().starts_with("vars:"));
    let owned;
    let text = match (has_header, vars) {
        (false, Some(v)) => {
            owned = format!("vars: {} {}\n{text}", v.first, v.second);
            owned.as_str()
        }
        _ => text,
    };
    let mut file = parse_poly_file(text).map_err(|e| anyhow!("{name}: {e}"))?;
    if let Some(v) = vars {
        if &file.vars != v {
            file.poly = file.poly.relabel(v.clone());
            file.vars = v.clone();
        }
    }
    Ok(file)
}

/// `arg` is a file path, or failing that the name of a corpus entry.
pub fn resolve(arg: &str, vars: Option<&Vars>) -> Result<CorpusEntry> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let file = parse_text(arg, &text, vars)?;
        return Ok(CorpusEntry { name: arg.to_string(), file });
    }
    if let Ok(dir) = env::var(CORPUS_ENV) {
        let p = Path::new(&dir).join(format!("{arg}.poly"));
        let text = fs::read_to_string(&p).with_context(|| format!("reading corpus entry {}", p.display()))?;
        let file = parse_text(arg, &text, vars)?;
        return Ok(CorpusEntry { name: arg.to_string(), file });
    }
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == arg)
        .ok_or_else(|| anyhow!("{arg}: no such file or corpus entry (bundled: {})", names().join(", ")))?;
    let file = parse_text(arg, text, vars)?;
    Ok(CorpusEntry { name: arg.to_string(), file })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries_parse_with_standard_labels() {
        for name in names() {
            let e = resolve(name, None).unwrap();
            assert!(e.file.vars == Vars::mb() || e.file.vars == Vars::ml(), "{name}");
            assert!(!e.provenance().is_empty(), "{name}");
        }
    }

    #[test]
    fn vars_override_relabels() {
        let e = resolve("fig8-sister", Some(&Vars::mb())).unwrap();
        assert_eq!(e.file.poly.vars(), &Vars::mb());
    }
}
