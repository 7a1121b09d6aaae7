use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use spectra_cli::job::{ArrangementMode, CachePolicy, CayleyMode, Command, Format};
use spectra_cli::{cache, write_atomic, Cache, JobDescriptor, DEFAULT_SEED};
use spectra_core::genset::GensetSpec;

/// Spectra of Cayley graphs on symmetric groups and of arrangement graphs.
#[derive(Parser, Debug)]
#[command(name = "spectra", version)]
struct Cli {
    /// Output format (defaults depend on the subcommand).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Result cache policy; the directory comes from SPECTRA_CACHE_DIR.
    #[arg(long, global = true, value_enum, default_value = "use")]
    cache: CachePolicy,
    /// Seed for the randomised checks in `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Vertex limit for numeric and arrangement work.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Cayley graph Γ(S_n, S).
    Cayley {
        #[arg(long)]
        n: usize,
        /// e.g. `cy:3`, `m:2,1`, `classes:1^2 2^1|1^1 3^1`, `nicesep:1^2 2^1;{1,2}{3,4}`
        #[arg(long)]
        genset: String,
        #[arg(long, value_enum, default_value = "spectrum")]
        mode: CayleyMode,
    },
    /// Arrangement graph A(n, k, r).
    Arrangement {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "spectrum")]
        mode: ArrangementMode,
    },
    /// Character table of S_n.
    Charset {
        #[arg(long)]
        n: usize,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Integrality table for arrangement graphs.
    Scan {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

fn job_from(cli: Cli) -> Result<JobDescriptor> {
    let command = match cli.command {
        Sub::Cayley { n, genset, mode } => {
            let genset = GensetSpec::parse(&genset).with_context(|| format!("cayley: --genset `{genset}`"))?;
            Command::Cayley { n, genset, mode }
        }
        Sub::Arrangement { n, k, r, mode } => Command::Arrangement { n, k, r, mode },
        Sub::Charset { n } => Command::Charset { n },
        Sub::Verify { max_n } => Command::Verify { max_n },
        Sub::Scan { max_n } => Command::Scan { max_n },
    };
    JobDescriptor::new(command, cli.format, cli.out, cli.cache, cli.seed, cli.max_vertices)
}

fn main_inner() -> Result<i32> {
    let job = job_from(Cli::parse())?;
    log::debug!("job {}", job.canonical());
    let artifact = spectra_cli::run(&job, &Cache::new(cache::cache_dir()))?;
    match &job.out {
        Some(path) => write_atomic(path, artifact.content.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(artifact.content.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(artifact.exit_code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match main_inner() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
