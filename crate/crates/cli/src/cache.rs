//! On-disk result cache keyed by the canonical job hash. Entries and
//! outputs are written to a temporary file and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Value};

use crate::job::{CachePolicy, JobDescriptor};
use crate::Artifact;

pub const CACHE_DIR_ENV: &str = "SPECTRA_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".spectra-cache";

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// Writes `bytes` to `path` atomically: a sibling temporary file is filled,
/// synced and renamed over the target.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| e.error)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    fn entry_path(&self, job: &JobDescriptor) -> PathBuf {
        self.dir.join(format!("{}.json", job.cache_key()))
    }

    pub fn load(&self, job: &JobDescriptor) -> Option<Artifact> {
        if job.cache != CachePolicy::Use {
            return None;
        }
        let text = fs::read_to_string(self.entry_path(job)).ok()?;
        let value: Value = serde_json::from_str(&text).ok()?;
        if value.get("job")?.as_str()? != job.canonical() {
            log::warn!("cache entry {} does not match its job; ignoring", job.cache_key());
            return None;
        }
        Some(Artifact {
            content: value.get("content")?.as_str()?.to_string(),
            exit_code: value.get("exit_code")?.as_i64()? as i32,
        })
    }

    pub fn store(&self, job: &JobDescriptor, artifact: &Artifact) -> Result<()> {
        if job.cache == CachePolicy::Off {
            return Ok(());
        }
        let entry = json!({
            "job": job.canonical(),
            "exit_code": artifact.exit_code,
            "content": artifact.content,
        });
        write_atomic(&self.entry_path(job), entry.to_string().as_bytes())
    }
}
