//! On-disk table descriptions keyed by a hash of `(quiver, q, bound, names)`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hallforge::error::Result;
use hallforge::quiver::Config;
use hallforge::table::{Table, TableSummary};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "HALLFORGE_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub name: String,
    pub dims: Vec<usize>,
    pub indecomposable: bool,
    pub aut: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableInfo {
    pub version: u32,
    pub key: String,
    pub config: Config,
    pub summary: TableSummary,
    pub classes: Vec<ClassRow>,
}

pub fn cache_key(cfg: &Config) -> String {
    let canonical = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn entry_path(dir: &Path, cfg: &Config) -> PathBuf {
    dir.join(format!("table-{}.json", &cache_key(cfg)[..16]))
}

pub fn describe(cfg: &Config, t: &Table) -> TableInfo {
    let indecs = t.indecomposables();
    TableInfo {
        version: CACHE_VERSION,
        key: cache_key(cfg),
        config: cfg.clone(),
        summary: t.summary(),
        classes: (0..t.n_classes())
            .map(|c| ClassRow {
                name: t.name(c).into(),
                dims: t.dim(c).to_vec(),
                indecomposable: indecs.contains(&c),
                aut: t.aut_count(c).to_string(),
            })
            .collect(),
    }
}

/// A cached description if one exists for exactly this configuration.
pub fn read(dir: &Path, cfg: &Config) -> Option<TableInfo> {
    let text = std::fs::read_to_string(entry_path(dir, cfg)).ok()?;
    let info: TableInfo = serde_json::from_str(&text).ok()?;
    (info.version == CACHE_VERSION && info.key == cache_key(cfg) && info.config == *cfg).then_some(info)
}

pub fn write(dir: &Path, info: &TableInfo) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = entry_path(dir, &info.config);
    std::fs::write(&path, serde_json::to_string_pretty(info)?)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_a_directory() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = Config::linear_a(2, 2, vec![1, 1]);
        assert!(read(dir.path(), &cfg).is_none());
        let t = Table::from_config(&cfg, 1 << 20).unwrap();
        let info = describe(&cfg, &t);
        write(dir.path(), &info).unwrap();
        assert_eq!(read(dir.path(), &cfg), Some(info));
        let other = Config::linear_a(2, 3, vec![1, 1]);
        assert_ne!(cache_key(&cfg), cache_key(&other));
        assert!(read(dir.path(), &other).is_none());
    }
}
