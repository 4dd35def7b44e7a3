//! Optional `key = value` config file mirroring the long flags.
//!
//! Entries are appended to the command line unless the flag is already
//! there, so flags always win. `true` stands for a bare switch and
//! `false` drops it.

use std::ffi::OsString;
use std::path::Path;

use crate::error::{CliError, Result};

/// Parse `key = value` lines. `#` starts a comment; quotes around the value
/// are stripped; `[section]` headers are ignored.
pub fn parse(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || (line.starts_with('[') && line.ends_with(']')) {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Format {
            path: path.into(),
            msg: format!("line {}: expected `key = value`", no + 1),
        })?;
        let k = k.trim().replace('_', "-");
        let v = v.trim().trim_matches('"').to_string();
        if k.is_empty() {
            return Err(CliError::Format { path: path.into(), msg: format!("line {}: empty key", no + 1) });
        }
        out.push((k, v));
    }
    Ok(out)
}

/// Append config entries whose flag is absent from `args`.
pub fn merge(args: &mut Vec<OsString>, entries: &[(String, String)]) {
    let present = |args: &[OsString], key: &str| {
        let flag = format!("--{key}");
        let prefix = format!("--{key}=");
        args.iter().any(|a| a.to_str().is_some_and(|s| s == flag || s.starts_with(&prefix)))
    };
    for (k, v) in entries {
        if k == "config" || present(args, k) {
            continue;
        }
        match v.as_str() {
            "true" => args.push(format!("--{k}").into()),
            "false" => {}
            _ => {
                args.push(format!("--{k}").into());
                args.push(v.into());
            }
        }
    }
}

/// Value of `--config <path>` or `--config=<path>`, if any.
pub fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_str()?;
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn flags_win_and_switches_expand() {
        let e = parse("# c\norder = 40\nprecision=60\ntiming = true\nquiet = false\n", Path::new("x")).unwrap();
        let mut a = os(&["agq", "build", "--order", "12"]);
        merge(&mut a, &e);
        assert_eq!(a, os(&["agq", "build", "--order", "12", "--precision", "60", "--timing"]));
    }

    #[test]
    fn bad_line_is_reported() {
        let err = parse("order 40", Path::new("c.toml")).unwrap_err();
        assert_eq!(err.to_string(), "c.toml: line 1: expected `key = value`");
    }

    #[test]
    fn finds_config_path() {
        assert_eq!(config_path(&os(&["agq", "svd", "--config=a.cfg"])), Some("a.cfg".into()));
        assert_eq!(config_path(&os(&["agq", "--config", "b"])), Some("b".into()));
        assert_eq!(config_path(&os(&["agq"])), None);
    }
}
