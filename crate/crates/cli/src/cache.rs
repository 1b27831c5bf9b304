//! Content-addressed result cache: `<dir>/<sha256(config)>.json`.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::envelope::ResultEnvelope;

pub fn config_key(config: &RunConfig) -> String {
    hex::encode(Sha256::digest(config.canonical_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, PartialEq)]
pub enum Lookup {
    Hit(Box<ResultEnvelope>),
    Miss,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path_for(&self, config: &RunConfig) -> PathBuf {
        self.dir.join(format!("{}.json", config_key(config)))
    }

    /// Unreadable, corrupt, stale-version or mismatched entries are misses.
    pub fn lookup(&self, config: &RunConfig) -> Lookup {
        let path = self.path_for(config);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => {
                log::info!("cache miss: {}", path.display());
                return Lookup::Miss;
            }
        };
        match ResultEnvelope::from_json(&text) {
            Ok(env) if !env.is_current() => {
                log::info!("cache miss: stale entry {} (engine {})", path.display(), env.engine_version);
                Lookup::Miss
            }
            Ok(env) if env.config != *config => {
                log::warn!("cache miss: config mismatch in {}", path.display());
                Lookup::Miss
            }
            Ok(env) => {
                log::info!("cache hit: {}", path.display());
                Lookup::Hit(Box::new(env))
            }
            Err(e) => {
                log::warn!("cache miss: corrupt entry {}: {e}", path.display());
                Lookup::Miss
            }
        }
    }

    /// Atomic write via a sibling temp file and rename.
    pub fn store(&self, env: &ResultEnvelope) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.path_for(&env.config);
        write_atomic(&path, env.to_json().as_bytes())?;
        Ok(path)
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CommandKind, RawOptions};

    fn cfg(degree: usize) -> RunConfig {
        let o = RawOptions { pair: Some("so_down_so:m=4".into()), degree: Some(degree), ..Default::default() };
        RunConfig::resolve(CommandKind::Branch, &o).unwrap()
    }

    #[test]
    fn key_is_stable_and_sensitive() {
        assert_eq!(config_key(&cfg(2)), config_key(&cfg(2)));
        assert_ne!(config_key(&cfg(2)), config_key(&cfg(3)));
        assert_eq!(config_key(&cfg(2)).len(), 64);
    }

    #[test]
    fn hit_miss_stale_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let c = cfg(2);
        assert_eq!(cache.lookup(&c), Lookup::Miss);
        let env = ResultEnvelope::new(&c);
        let path = cache.store(&env).unwrap();
        assert_eq!(cache.lookup(&c), Lookup::Hit(Box::new(env.clone())));
        assert_eq!(cache.lookup(&cfg(3)), Lookup::Miss);

        let mut stale = env.clone();
        stale.engine_version = "vbranch-core/0.0.0".into();
        std::fs::write(&path, stale.to_json()).unwrap();
        assert_eq!(cache.lookup(&c), Lookup::Miss);

        std::fs::write(&path, "{ not json").unwrap();
        assert_eq!(cache.lookup(&c), Lookup::Miss);
    }
}
