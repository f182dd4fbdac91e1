//! `key=value` parameter files and run manifests.
//!
//! Keys are long flag names without the leading dashes. A file value only
//! applies when the flag was not given on the command line.

use std::fs;
use std::path::Path;

use clap::parser::ValueSource;
use clap::{ArgMatches, Command};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Flags that steer the run itself and are never read from a file.
const RESERVED: &[&str] = &["config", "manifest", "out", "help", "version"];

pub fn parse_config_text(text: &str) -> Result<Vec<Entry>, String> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected key=value, got '{}'", i + 1, raw.trim()));
        };
        entries.push(Entry {
            line: i + 1,
            key: key.trim().to_string(),
            value: value.trim().to_string(),
        });
    }
    Ok(entries)
}

pub fn parse_config_file(path: &Path) -> Result<Vec<Entry>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    parse_config_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Long flag name (and visible aliases) to argument id for `sub` plus the
/// global flags of `root`.
fn known_flags(root: &Command, sub: &Command) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for arg in root.get_arguments().chain(sub.get_arguments()) {
        let id = arg.get_id().as_str().to_string();
        if let Some(long) = arg.get_long() {
            out.push((long.to_string(), id.clone()));
        }
        for alias in arg.get_visible_aliases().into_iter().flatten() {
            out.push((alias.to_string(), id.clone()));
        }
    }
    out
}

/// Appends `--key=value` for every file entry whose flag was not set on the
/// command line. Unknown or reserved keys are rejected with their line number.
pub fn merge_into_argv(
    argv: &[String],
    entries: &[Entry],
    root: &Command,
    sub_name: &str,
    sub_matches: &ArgMatches,
    source: &Path,
) -> Result<Vec<String>, String> {
    let sub = root.find_subcommand(sub_name).expect("subcommand exists");
    let flags = known_flags(root, sub);
    let mut merged = argv.to_vec();
    for e in entries {
        let id = flags
            .iter()
            .find(|(long, _)| *long == e.key)
            .map(|(_, id)| id.as_str())
            .filter(|_| !RESERVED.contains(&e.key.as_str()));
        let Some(id) = id else {
            return Err(format!(
                "{}: line {}: unknown key '{}' for subcommand '{sub_name}'",
                source.display(),
                e.line,
                e.key
            ));
        };
        if sub_matches.value_source(id) != Some(ValueSource::CommandLine) {
            merged.push(format!("--{}={}", e.key, e.value));
        }
    }
    Ok(merged)
}

/// Every parameter after defaulting, as `key=value` lines a config file can
/// replay. Run metadata goes in comment lines.
pub fn manifest_text(
    root: &Command,
    sub_name: &str,
    sub_matches: &ArgMatches,
    comments: &[(String, String)],
) -> String {
    let sub = root.find_subcommand(sub_name).expect("subcommand exists");
    let mut text = String::new();
    for (k, v) in comments {
        text.push_str(&format!("# {k}: {v}\n"));
    }
    for arg in root.get_arguments().chain(sub.get_arguments()) {
        let (Some(long), id) = (arg.get_long(), arg.get_id().as_str()) else {
            continue;
        };
        if RESERVED.contains(&long) {
            continue;
        }
        let Some(raw) = sub_matches.get_raw(id) else {
            continue;
        };
        let values: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
        text.push_str(&format!("{long}={}\n", values.join(",")));
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let e = parse_config_text("# header\n\nseed = 7 # trailing\nframe-len=8\n").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(
            e[0],
            Entry {
                line: 3,
                key: "seed".into(),
                value: "7".into()
            }
        );
        assert_eq!(e[1].key, "frame-len");
    }

    #[test]
    fn rejects_lines_without_equals() {
        let err = parse_config_text("seed=1\nbogus\n").unwrap_err();
        assert!(err.contains("line 2"), "{err}");
    }
}
