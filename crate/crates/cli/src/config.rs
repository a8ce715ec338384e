//! Flat `key = value` config files, merged into the command line so that
//! explicit flags win.

use std::ffi::OsString;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}:{line}: expected `key = value`")]
    Syntax { path: String, line: usize },
}

/// Parses `key = value` lines; `#` starts a comment, blank lines are
/// ignored. Keys may use `-` or `_` and an optional leading `--`.
pub fn parse(text: &str, path: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::Syntax { path: path.to_string(), line: i + 1 });
        };
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(ConfigError::Syntax { path: path.to_string(), line: i + 1 });
        }
        let value = v.trim().trim_matches('"').to_string();
        pairs.push((key, value));
    }
    Ok(pairs)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

/// Inserts flags from the file named by `--config` directly after the
/// subcommand, ahead of the user's own flags, which therefore override them.
/// `true`/`false` values become bare switches or are dropped.
pub fn merge(args: Vec<OsString>) -> Result<Vec<OsString>, ConfigError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let shown = Path::new(&path).display().to_string();
    let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Read { path: shown.clone(), source })?;
    let mut injected = Vec::new();
    for (key, value) in parse(&text, &shown)? {
        match value.as_str() {
            "true" => injected.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                injected.push(format!("--{key}").into());
                injected.push(value.into());
            }
        }
    }
    let at = args.len().min(2);
    let mut merged = args[..at].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&args[at..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_key_styles() {
        let p = parse("# run\nalpha = 0.5\n--quad_points=320 # trailing\n\nmethod = \"both\"\n", "f").unwrap();
        assert_eq!(
            p,
            vec![
                ("alpha".into(), "0.5".into()),
                ("quad-points".into(), "320".into()),
                ("method".into(), "both".into())
            ]
        );
        assert!(parse("alpha 0.5", "f").is_err());
    }

    #[test]
    fn flags_follow_config_values() {
        let dir = std::env::temp_dir().join(format!("hprolate-config-{}", std::process::id()));
        std::fs::write(&dir, "alpha = 1\nvectors = true\n").unwrap();
        let args: Vec<OsString> =
            ["hprolate", "spectrum", "--config", dir.to_str().unwrap(), "--alpha", "2"].iter().map(Into::into).collect();
        let merged = merge(args).unwrap();
        let merged: Vec<String> = merged.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(&merged[..5], ["hprolate", "spectrum", "--alpha", "1", "--vectors"]);
        assert_eq!(merged.last().unwrap(), "2");
    }
}
