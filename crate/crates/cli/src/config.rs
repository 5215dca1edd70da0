use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use genome_kit::cq::Thresholds;
use genome_kit::lint::LintConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Markdown,
    Json,
}

/// Effective settings: defaults, then the `GENOME_CONFIG` file, then flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub lower: f64,
    pub upper: f64,
    pub max_iters: usize,
    pub strict: bool,
    pub format: Format,
    /// Namespace for IRIs minted by `populate`.
    pub base: String,
    pub internal_fixes: bool,
    pub lint: LintConfig,
}

impl Default for Config {
    fn default() -> Self {
        let t = Thresholds::default();
        Config {
            lower: t.lower,
            upper: t.upper,
            max_iters: 5,
            strict: false,
            format: Format::Markdown,
            base: "http://example.org/epic#".to_owned(),
            internal_fixes: false,
            lint: LintConfig::default(),
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("{}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("{}", path.display()))
    }

    pub fn thresholds(&self) -> anyhow::Result<Thresholds> {
        Ok(Thresholds::new(self.lower, self.upper)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
