//! Command-line front end: job validation, the result cache and the
//! commands themselves. The `spectra` binary is a thin clap wrapper.

pub mod cache;
pub mod commands;
pub mod job;
pub mod verify;

use anyhow::Result;

pub use cache::{write_atomic, Cache};
pub use job::{JobDescriptor, DEFAULT_SEED};
pub use verify::run_verify;

/// A finished command: the exact output bytes and the process exit code
/// they belong with (0 success, 1 a failed check, 2 undecided).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub content: String,
    pub exit_code: i32,
}

/// Serves `job` from the cache when allowed, otherwise computes and stores it.
pub fn run(job: &JobDescriptor, cache: &Cache) -> Result<Artifact> {
    if let Some(hit) = cache.load(job) {
        log::info!("cache hit {}", job.cache_key());
        return Ok(hit);
    }
    let artifact = commands::execute(job)?;
    if let Err(e) = cache.store(job, &artifact) {
        log::warn!("could not store cache entry: {e:#}");
    }
    Ok(artifact)
}
