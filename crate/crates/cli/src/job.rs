//! Validated job descriptions and their canonical form, which keys the
//! result cache.

use std::fmt;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use spectra_core::genset::GensetSpec;
use spectra_core::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Edgelist,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum CachePolicy {
    #[default]
    Use,
    Refresh,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CayleyMode {
    Spectrum,
    Export,
    Integrality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArrangementMode {
    Spectrum,
    Export,
    QuotientCheck,
    Lift,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Cayley { n: usize, genset: GensetSpec, mode: CayleyMode },
    Arrangement { n: usize, k: usize, r: usize, mode: ArrangementMode },
    Charset { n: usize },
    Verify { max_n: usize },
    Scan { max_n: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cayley { .. } => "cayley",
            Command::Arrangement { .. } => "arrangement",
            Command::Charset { .. } => "charset",
            Command::Verify { .. } => "verify",
            Command::Scan { .. } => "scan",
        }
    }

    /// Output format used when none is requested; `None` means plain text.
    fn default_format(&self) -> Option<Format> {
        match self {
            Command::Cayley { mode: CayleyMode::Export, .. } => Some(Format::Edgelist),
            Command::Cayley { .. } => Some(Format::Json),
            Command::Arrangement { mode: ArrangementMode::Export, .. } => Some(Format::Edgelist),
            Command::Arrangement { mode: ArrangementMode::QuotientCheck, .. } => None,
            Command::Arrangement { .. } => Some(Format::Json),
            Command::Charset { .. } | Command::Scan { .. } => Some(Format::Csv),
            Command::Verify { .. } => Some(Format::Json),
        }
    }

    fn allowed_formats(&self) -> &'static [Format] {
        match self {
            Command::Cayley { mode: CayleyMode::Export, .. }
            | Command::Arrangement { mode: ArrangementMode::Export, .. } => &[Format::Edgelist],
            Command::Charset { .. } | Command::Scan { .. } => &[Format::Csv, Format::Json],
            _ => &[Format::Json],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobDescriptor {
    pub command: Command,
    /// `None` selects plain text where a command supports it.
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub cache: CachePolicy,
    pub seed: u64,
    pub max_vertices: Option<usize>,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl JobDescriptor {
    /// Fills in the default format and checks every parameter before any
    /// computation starts.
    pub fn new(
        command: Command,
        format: Option<Format>,
        out: Option<PathBuf>,
        cache: CachePolicy,
        seed: u64,
        max_vertices: Option<usize>,
    ) -> Result<Self> {
        let budget = Budget::default();
        match &command {
            Command::Cayley { n, genset, .. } => {
                if *n == 0 || *n > budget.group_degree {
                    bail!("cayley: n = {n} is outside 1..={} (group enumeration cap)", budget.group_degree);
                }
                genset
                    .build_capped(*n, budget.group_degree)
                    .with_context(|| format!("cayley: generating set `{genset}` for n = {n}"))?;
            }
            Command::Arrangement { n, k, r, .. } => {
                if !(1 <= *r && r <= k && k <= n) {
                    bail!("arrangement: need 1 ≤ r ≤ k ≤ n, got n = {n}, k = {k}, r = {r}");
                }
                if *n > budget.group_degree {
                    bail!("arrangement: n = {n} exceeds the group enumeration cap {}", budget.group_degree);
                }
            }
            Command::Charset { n } => {
                if *n == 0 || *n > budget.character_degree {
                    bail!("charset: n = {n} is outside 1..={} (character table cap)", budget.character_degree);
                }
            }
            Command::Verify { max_n } => {
                if !(2..=6).contains(max_n) {
                    bail!("verify: --max-n must lie in 2..=6, got {max_n}");
                }
            }
            Command::Scan { max_n } => {
                if !(2..=budget.group_degree).contains(max_n) {
                    bail!("scan: --max-n must lie in 2..={}, got {max_n}", budget.group_degree);
                }
            }
        }
        if let Some(0) = max_vertices {
            bail!("--max-vertices must be positive");
        }
        let format = format.or(command.default_format());
        if let Some(f) = format {
            if !command.allowed_formats().contains(&f) {
                bail!(
                    "{}: format {} is not available here",
                    command.name(),
                    value_name(&f)
                );
            }
        }
        Ok(Self {
            command,
            format,
            out,
            cache,
            seed,
            max_vertices,
        })
    }

    /// Default budgets, with `--max-vertices` replacing every vertex limit
    /// (the exact limit is only ever lowered).
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(m) = self.max_vertices {
            b.numeric_vertices = m;
            b.arrangement_vertices = m;
            b.exact_vertices = b.exact_vertices.min(m);
        }
        b
    }

    /// Everything that determines the artifact bytes; output path and cache
    /// policy are excluded.
    pub fn canonical(&self) -> String {
        let params = match &self.command {
            Command::Cayley { n, genset, mode } => {
                json!({"n": n, "genset": genset.to_string(), "mode": value_name(mode)})
            }
            Command::Arrangement { n, k, r, mode } => {
                json!({"n": n, "k": k, "r": r, "mode": value_name(mode)})
            }
            Command::Charset { n } => json!({ "n": n }),
            Command::Verify { max_n } => json!({"max_n": max_n, "seed": self.seed}),
            Command::Scan { max_n } => json!({ "max_n": max_n }),
        };
        let value: Value = json!({
            "command": self.command.name(),
            "params": params,
            "format": self.format.map(|f| value_name(&f)),
            "max_vertices": self.max_vertices,
            "version": env!("CARGO_PKG_VERSION"),
        });
        value.to_string()
    }

    pub fn cache_key(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

impl fmt::Display for JobDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}
