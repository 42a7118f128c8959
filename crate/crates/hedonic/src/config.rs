//! Campaign configuration files.
//!
//! ```text
//! # comment
//! seed = 42
//! n = 30
//! k = 5
//! instances = 1000
//! family = gnp(0.5)
//! family = uniform_tree
//! family = watts_strogatz(5, 0.5)
//! restart_threshold = 100
//! max_restarts = 50
//! ```
//!
//! `seed`, `n`, `k` and `instances` are required. `family` may repeat; with
//! none the campaign is empty. The heuristic keys default to the library
//! defaults; `sample_tries` is also accepted.

use std::str::FromStr;

use hedonic_core::workbench::{CampaignConfig, Family, HeuristicConfig};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
}

pub fn parse(text: &str) -> Result<CampaignConfig, ConfigError> {
    let mut seed = None;
    let mut n = None;
    let mut k = None;
    let mut instances = None;
    let mut families = Vec::new();
    let mut heuristic = HeuristicConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let err = |message: String| ConfigError::Syntax { line, message };
        let (key, value) = l.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "seed" | "master_seed" => seed = Some(number(value).map_err(err)?),
            "n" => n = Some(number(value).map_err(err)?),
            "k" => k = Some(number(value).map_err(err)?),
            "instances" => instances = Some(number(value).map_err(err)?),
            "family" => families.push(Family::parse(value).map_err(|e| err(e.to_string()))?),
            "restart_threshold" => heuristic.restart_threshold = number(value).map_err(err)?,
            "max_restarts" => heuristic.max_restarts = number(value).map_err(err)?,
            "sample_tries" => heuristic.sample_tries = number(value).map_err(err)?,
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    Ok(CampaignConfig {
        master_seed: seed.ok_or(ConfigError::Missing("seed"))?,
        n: n.ok_or(ConfigError::Missing("n"))?,
        k: k.ok_or(ConfigError::Missing("k"))?,
        instances: instances.ok_or(ConfigError::Missing("instances"))?,
        families,
        heuristic,
    })
}

fn number<T: FromStr>(value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("`{value}` is not a valid non-negative integer"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let c = parse(
            "# demo\nseed = 42\nn = 12\nk = 4\ninstances = 3\nfamily = gnp(0.5)\n\
             family = uniform_tree\nfamily = watts_strogatz(5, 0.5)\nmax_restarts = 7\n",
        )
        .unwrap();
        assert_eq!((c.master_seed, c.n, c.k, c.instances), (42, 12, 4, 3));
        assert_eq!(c.families.len(), 3);
        assert_eq!(c.heuristic.max_restarts, 7);
        assert_eq!(c.heuristic.restart_threshold, 100);
    }

    #[test]
    fn errors() {
        assert_eq!(parse("n = 3\nk = 3\ninstances = 1\n"), Err(ConfigError::Missing("seed")));
        assert!(matches!(parse("seed = x"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(parse("\nbogus = 1"), Err(ConfigError::Syntax { line: 2, .. })));
        assert!(matches!(parse("family = nope(1)"), Err(ConfigError::Syntax { .. })));
        assert!(matches!(parse("just words"), Err(ConfigError::Syntax { .. })));
    }
}
