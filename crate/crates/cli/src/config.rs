use std::path::Path;

use anyhow::{bail, Context, Result};
use lacuna::suite::SuiteParams;
use serde::Deserialize;

pub const DEFAULTS_ENV: &str = "LACUNA_DEFAULTS";
const BUILTIN: &str = include_str!("../defaults.toml");
const VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DefaultsFile {
    version: u32,
    #[serde(default)]
    suite: SuiteParams,
}

fn parse(text: &str, origin: &str) -> Result<SuiteParams> {
    let file: DefaultsFile = toml::from_str(text).with_context(|| format!("invalid defaults in {origin}"))?;
    if file.version != VERSION {
        bail!("{origin}: unsupported defaults version {} (expected {VERSION})", file.version);
    }
    Ok(file.suite)
}

pub fn builtin() -> SuiteParams {
    parse(BUILTIN, "built-in defaults").expect("shipped defaults parse")
}

/// Defaults from `LACUNA_DEFAULTS` when set, otherwise the built-in file.
pub fn load() -> Result<SuiteParams> {
    match std::env::var_os(DEFAULTS_ENV) {
        Some(path) => load_file(Path::new(&path)),
        None => Ok(builtin()),
    }
}

pub fn load_file(path: &Path) -> Result<SuiteParams> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_matches_library_defaults() {
        assert_eq!(builtin(), SuiteParams::default());
    }

    #[test]
    fn partial_files_and_bad_versions() {
        let p = parse("version = 1\n[suite.lehmer]\nnmax = 3\n", "t").unwrap();
        assert_eq!(p.lehmer.nmax, 3);
        assert_eq!(p.moments.nmax, 30);
        assert!(parse("version = 2\n", "t").is_err());
        assert!(parse("version = 1\n[suite.lehmer]\nn = 3\n", "t").is_err());
        assert!(parse("[suite]\nseed = 1\n", "t").is_err());
    }
}
