use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Overrides `port` when set.
pub const PORT_ENV: &str = "EXPERT_SEARCH_PORT";

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    pub port: u16,
    pub corpus_dir: PathBuf,
    /// Loaded when present; otherwise a model is trained at startup and
    /// written here.
    pub model_path: PathBuf,
    pub votes_path: PathBuf,
    pub alpha: f64,
    pub damping: f64,
    /// Number of categories whose features stay cached.
    pub cache_size: usize,
    pub lenient: bool,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            port: 8080,
            corpus_dir: PathBuf::from("corpus"),
            model_path: PathBuf::from("model.txt"),
            votes_path: PathBuf::from("votes.log"),
            alpha: 1.0,
            damping: 0.85,
            cache_size: 16,
            lenient: false,
        }
    }
}

impl ServiceConfig {
    /// Reads a TOML config. Relative paths resolve against the config file's
    /// directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config: ServiceConfig =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if let Some(base) = path.parent() {
            for p in [
                &mut config.corpus_dir,
                &mut config.model_path,
                &mut config.votes_path,
            ] {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        Ok(config)
    }

    /// Applies the port override from the environment.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(port) = std::env::var(PORT_ENV) {
            self.port = port
                .parse()
                .map_err(|_| Error::Config(format!("{PORT_ENV}=`{port}` is not a port")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.port == 0 {
            return Err(Error::Config("port must be in 1..=65535".into()));
        }
        if !self.corpus_dir.is_dir() {
            return Err(Error::Config(format!(
                "corpus directory {} is not readable",
                self.corpus_dir.display()
            )));
        }
        // negated so NaN is rejected too
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.alpha > 0.0) {
            return Err(Error::Config("alpha must be positive".into()));
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::Config("damping must lie in (0, 1)".into()));
        }
        if self.cache_size == 0 {
            return Err(Error::Config("cache_size must be positive".into()));
        }
        Ok(())
    }
}
