use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

/// Eigenvalue clustering tolerance for dense numeric spectra.
pub const AGGREGATION_TOLERANCE: f64 = 1e-8;

/// Distance from the nearest integer below which a numeric eigenvalue is
/// treated as an integer candidate.
pub const INTEGRALITY_SCREEN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eigenvalue {
    Exact(i64),
    Approx(f64),
}

impl Eigenvalue {
    pub fn as_f64(self) -> f64 {
        match self {
            Eigenvalue::Exact(v) => v as f64,
            Eigenvalue::Approx(v) => v,
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(v) => write!(f, "{v}"),
            Eigenvalue::Approx(v) => write!(f, "{v:.10}"),
        }
    }
}

/// A multiset of eigenvalues, stored as `(value, multiplicity)` pairs in
/// descending order of value.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pairs: Vec<(Eigenvalue, usize)>,
    exact: bool,
}

impl Spectrum {
    pub fn from_exact(map: BTreeMap<i64, usize>) -> Self {
        let pairs = map
            .into_iter()
            .rev()
            .filter(|&(_, m)| m > 0)
            .map(|(v, m)| (Eigenvalue::Exact(v), m))
            .collect();
        Self { pairs, exact: true }
    }

    /// Clusters the values: a value joins the current cluster while it is
    /// within `tolerance` of the cluster's largest member. Cluster value is
    /// the mean.
    pub fn from_numeric(mut values: Vec<f64>, tolerance: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let mut pairs: Vec<(Eigenvalue, usize)> = Vec::new();
        let mut cluster: Vec<f64> = Vec::new();
        let flush = |cluster: &mut Vec<f64>, pairs: &mut Vec<(Eigenvalue, usize)>| {
            if !cluster.is_empty() {
                let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
                pairs.push((Eigenvalue::Approx(mean), cluster.len()));
                cluster.clear();
            }
        };
        for v in values {
            if let Some(&head) = cluster.first() {
                if head - v > tolerance {
                    flush(&mut cluster, &mut pairs);
                }
            }
            cluster.push(v);
        }
        flush(&mut cluster, &mut pairs);
        Self {
            pairs,
            exact: false,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn pairs(&self) -> &[(Eigenvalue, usize)] {
        &self.pairs
    }

    pub fn total(&self) -> usize {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    pub fn distinct(&self) -> usize {
        self.pairs.len()
    }

    /// Exact spectra only.
    pub fn integer_map(&self) -> Option<BTreeMap<i64, usize>> {
        if !self.exact {
            return None;
        }
        Some(
            self.pairs
                .iter()
                .map(|&(v, m)| match v {
                    Eigenvalue::Exact(v) => (v, m),
                    Eigenvalue::Approx(_) => unreachable!("exact spectrum holds exact values"),
                })
                .collect(),
        )
    }

    /// Multiplicity of an integer eigenvalue; numeric spectra match within
    /// the integrality screen.
    pub fn multiplicity(&self, value: i64) -> usize {
        self.pairs
            .iter()
            .filter(|(v, _)| match *v {
                Eigenvalue::Exact(x) => x == value,
                Eigenvalue::Approx(x) => (x - value as f64).abs() <= INTEGRALITY_SCREEN,
            })
            .map(|&(_, m)| m)
            .sum()
    }

    pub fn contains(&self, value: i64) -> bool {
        self.multiplicity(value) > 0
    }

    pub fn max(&self) -> Option<f64> {
        self.pairs.first().map(|(v, _)| v.as_f64())
    }

    pub fn min(&self) -> Option<f64> {
        self.pairs.last().map(|(v, _)| v.as_f64())
    }

    /// Largest distance of any eigenvalue from its nearest integer.
    pub fn max_integer_deviation(&self) -> f64 {
        self.pairs
            .iter()
            .map(|(v, _)| {
                let x = v.as_f64();
                (x - x.round()).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Every multiplicity multiplied by `factor` (disjoint copies).
    pub fn repeated(&self, factor: usize) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(v, m)| (v, m * factor)).collect(),
            exact: self.exact,
        }
    }

    /// `Σ m·λ^p`, exact spectra only.
    pub fn moment(&self, p: u32) -> Option<i128> {
        let map = self.integer_map()?;
        Some(map.iter().map(|(&v, &m)| m as i128 * (v as i128).pow(p)).sum())
    }

    /// JSON export: exact values as integers, numeric ones as decimal strings.
    pub fn to_json(&self, n: usize, genset: &str) -> Value {
        let entries: Vec<Value> = self
            .pairs
            .iter()
            .map(|&(v, m)| match v {
                Eigenvalue::Exact(x) => json!({"value": x, "multiplicity": m}),
                Eigenvalue::Approx(x) => json!({"value": format!("{x:.12}"), "multiplicity": m}),
            })
            .collect();
        json!({
            "n": n,
            "genset": genset,
            "exact": self.exact,
            "spectrum": entries,
        })
    }
}

/// `{3:1, 0:4, -3:1}`.
impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:{m}")?;
        }
        f.write_str("}")
    }
}
