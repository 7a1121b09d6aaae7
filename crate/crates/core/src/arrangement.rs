//! Arrangement graphs `A(n,k,r)` and the right-coset equitable partitions of
//! `Γ(S_n, M(r))` and `Γ(S_n, {(i j) : i ≤ k < j})` whose quotients recover
//! them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cayley::{build_cayley, CayleyGraph};
use crate::error::{Error, Result};
use crate::genset::{m_set_capped, GeneratingSet};
use crate::graph::{Graph, SymMatrix, Symmetry};
use crate::perm::{factorial, factorial_usize, right_cosets_capped, CosetSystem, Permutation};
use crate::spectral::{self, numeric_eigenvalues, ExactOutcome, Verdict};
use crate::spectrum::{Spectrum, INTEGRALITY_SCREEN};
use crate::Budget;

fn check_parameters(n: usize, k: usize, r: usize) -> Result<()> {
    if !(1 <= r && r <= k && k <= n) {
        return Err(Error::InvalidParameters(format!(
            "arrangement graphs need 1 ≤ r ≤ k ≤ n, got n = {n}, k = {k}, r = {r}"
        )));
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `|M(r)| = C(k,r)·Σ_{j=0..r} (-1)^j·C(r,j)·(n-k+r-j)!`: choose the moved
/// points of `{1..k}`, then count permutations of the remaining free points
/// that move every chosen one.
pub fn m_count_closed_form(n: usize, k: usize, r: usize) -> Result<BigUint> {
    check_parameters(n, k, r)?;
    let mut plus = BigUint::from(0u32);
    let mut minus = BigUint::from(0u32);
    for j in 0..=r {
        let term = binomial(r, j) * factorial(n - k + r - j);
        if j % 2 == 0 {
            plus += term;
        } else {
            minus += term;
        }
    }
    Ok(binomial(k, r) * (plus - minus))
}

/// Lexicographically ordered k-permutations of `{1..n}` (0-based values).
pub fn k_permutations(n: usize, k: usize) -> Vec<Vec<u8>> {
    fn extend(n: usize, k: usize, prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                extend(n, k, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(n, k, &mut Vec::with_capacity(k), &mut vec![false; n], &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct ArrangementGraph {
    n: usize,
    k: usize,
    r: usize,
    tuples: Vec<Vec<u8>>,
    graph: Graph,
}

impl ArrangementGraph {
    pub fn params(&self) -> (usize, usize, usize) {
        (self.n, self.k, self.r)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.tuples.len()
    }

    /// Vertex `v` as a 1-based tuple.
    pub fn tuple(&self, v: usize) -> Vec<usize> {
        self.tuples[v].iter().map(|&x| x as usize + 1).collect()
    }

    pub fn matrix(&self) -> SymMatrix {
        self.graph.to_matrix()
    }

    pub fn edge_list(&self) -> String {
        self.graph
            .edge_list(&[format!("arrangement {} {} {}", self.n, self.k, self.r)])
    }
}

/// Tuples adjacent iff they differ in exactly `r` positions. The common
/// degree is checked against `|M(r)|/(n-k)!`.
pub fn build_arrangement(n: usize, k: usize, r: usize, budget: &Budget) -> Result<ArrangementGraph> {
    check_parameters(n, k, r)?;
    let vertices = factorial(n) / factorial(n - k);
    let count = vertices.to_usize().unwrap_or(usize::MAX);
    if count > budget.arrangement_vertices {
        return Err(Error::BudgetExceeded {
            what: "arrangement graph",
            vertices: count,
            budget: budget.arrangement_vertices,
            hint: "choose smaller n or k",
        });
    }
    let tuples = k_permutations(n, k);
    let adj: Vec<Vec<u32>> = tuples
        .par_iter()
        .map(|a| {
            tuples
                .iter()
                .enumerate()
                .filter(|(_, b)| a.iter().zip(b.iter()).filter(|(x, y)| x != y).count() == r)
                .map(|(j, _)| j as u32)
                .collect()
        })
        .collect();
    let graph = Graph::with_symmetry(adj, Symmetry::ValueRelabelling { n, k });
    let expected = m_count_closed_form(n, k, r)? / factorial(n - k);
    let expected = expected.to_usize().expect("degree fits");
    if graph.regular_degree() != Some(expected) {
        return Err(Error::InvariantViolation(format!(
            "A({n},{k},{r}) is not {expected}-regular"
        )));
    }
    Ok(ArrangementGraph { n, k, r, tuples, graph })
}

/// Quotient of a Cayley graph by the right cosets of `S_n({k+1..n})`.
#[derive(Clone, Debug)]
pub struct QuotientMatrix {
    host: CayleyGraph,
    partition: CosetSystem,
    k: usize,
    entries: Vec<Vec<u64>>,
}

impl QuotientMatrix {
    pub fn host(&self) -> &CayleyGraph {
        &self.host
    }

    pub fn partition(&self) -> &CosetSystem {
        &self.partition
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Distinct entries, ascending.
    pub fn entry_values(&self) -> BTreeSet<u64> {
        self.entries.iter().flatten().copied().collect()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// Coset vector `(αᵢ(1), …, αᵢ(k))` of block `i`.
    pub fn block_vector(&self, i: usize) -> Vec<usize> {
        self.partition.coset_vector(i, self.k).expect("support is {k+1..n}")
    }

    pub fn to_sym_matrix(&self) -> SymMatrix {
        let mut adj = vec![Vec::new(); self.dim()];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &q) in row.iter().enumerate() {
                if q != 0 {
                    adj[i].push((j as u32, q as i64));
                }
            }
        }
        SymMatrix::from_weighted_rows(adj)
    }
}

/// Builds `Q` from the coset partition, checking exhaustively that every
/// vertex of block `i` has the same number of neighbours in block `j`, that
/// no edge stays inside a block, and that every entry lies in `allowed`.
fn coset_quotient(host: CayleyGraph, k: usize, allowed: &[u64], budget: &Budget) -> Result<QuotientMatrix> {
    let n = host.degree_n();
    let support: BTreeSet<usize> = (k + 1..=n).collect();
    let partition = right_cosets_capped(n, &support, budget.group_degree)?;
    let l = partition.index();
    let graph = host.graph();
    let block: Vec<usize> = (0..graph.vertex_count())
        .map(|v| partition.coset_of(&Permutation::unrank(n, v)))
        .collect();
    let mut entries: Vec<Option<Vec<u64>>> = vec![None; l];
    for v in 0..graph.vertex_count() {
        let i = block[v];
        let mut counts = vec![0u64; l];
        for &u in graph.neighbors(v) {
            counts[block[u as usize]] += 1;
        }
        if counts[i] != 0 {
            return Err(Error::InvariantViolation(format!(
                "vertex {v} has a neighbour inside its own coset {i}"
            )));
        }
        if let Some(j) = counts.iter().position(|c| !allowed.contains(c)) {
            return Err(Error::InvariantViolation(format!(
                "vertex {v} has {} neighbours in coset {j}; allowed counts are {allowed:?}",
                counts[j]
            )));
        }
        match &entries[i] {
            None => entries[i] = Some(counts),
            Some(row) if *row == counts => {}
            Some(_) => {
                return Err(Error::InvariantViolation(format!(
                    "coset partition is not equitable at vertex {v} (coset {i})"
                )))
            }
        }
    }
    let entries = entries
        .into_iter()
        .map(|r| r.expect("every coset is non-empty"))
        .collect();
    Ok(QuotientMatrix {
        host,
        partition,
        k,
        entries,
    })
}

/// Quotient of `Γ(S_n, M(r))` by the cosets of `S_n({k+1..n})`; every entry
/// is `0` or `(n-k)!`.
pub fn equitable_quotient(n: usize, k: usize, r: usize, budget: &Budget) -> Result<QuotientMatrix> {
    check_parameters(n, k, r)?;
    let s = m_set_capped(n, k, r, budget.group_degree)?;
    let host = build_cayley(&s, budget)?;
    coset_quotient(host, k, &[0, factorial_usize(n - k) as u64], budget)
}

/// `S = {(i j) : i ≤ k < j}`.
pub fn cross_transpositions(n: usize, k: usize) -> Result<GeneratingSet> {
    let elements = (1..=k)
        .flat_map(|i| (k + 1..=n).map(move |j| (i, j)))
        .map(|(i, j)| Permutation::from_cycles(n, &[vec![i, j]]))
        .collect::<Result<Vec<_>>>()?;
    GeneratingSet::custom(n, elements)
}

/// Quotient of `Γ(S_n, {(i j) : i ≤ k < j})` by the same cosets. Each vertex
/// has at most one neighbour in any other coset, so `Q` is 0/1.
pub fn unique_neighbor_quotient(n: usize, k: usize, budget: &Budget) -> Result<QuotientMatrix> {
    if !(2 <= k && k < n) {
        return Err(Error::InvalidParameters(format!("needs n > k ≥ 2, got n = {n}, k = {k}")));
    }
    let host = build_cayley(&cross_transpositions(n, k)?, budget)?;
    coset_quotient(host, k, &[0, 1], budget)
}

/// Result of comparing `Q` with `(n-k)!·A_{n,k,r}` entrywise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientIdentity {
    pub factor: u64,
    pub holds: bool,
    /// `(i, j, q_ij, A_ij)` at the first mismatch.
    pub counterexample: Option<(usize, usize, u64, u64)>,
}

impl fmt::Display for QuotientIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q == {}·A : {}", self.factor, self.holds)?;
        if let Some((i, j, q, a)) = self.counterexample {
            write!(f, " (Q[{i}][{j}] = {q}, A[{i}][{j}] = {a})")?;
        }
        Ok(())
    }
}

/// Compares a quotient with `factor·A` under the matching block `i` ↔ tuple
/// `(αᵢ(1), …, αᵢ(k))`; both sides are in lexicographic tuple order.
pub fn compare_quotient(q: &QuotientMatrix, a: &ArrangementGraph, factor: u64) -> QuotientIdentity {
    let mismatch = |i: usize, j: usize| {
        let want = if a.graph().has_edge(i, j) { factor } else { 0 };
        (q.entries[i][j] != want).then_some((i, j, q.entries[i][j], want / factor.max(1)))
    };
    let mut counterexample = None;
    if q.dim() != a.vertex_count() {
        counterexample = Some((q.dim(), a.vertex_count(), 0, 0));
    } else if let Some(i) = (0..q.dim()).find(|&i| q.block_vector(i) != a.tuple(i)) {
        counterexample = Some((i, i, 0, 0));
    } else {
        'outer: for i in 0..q.dim() {
            for j in 0..q.dim() {
                if let Some(c) = mismatch(i, j) {
                    counterexample = Some(c);
                    break 'outer;
                }
            }
        }
    }
    QuotientIdentity {
        factor,
        holds: counterexample.is_none(),
        counterexample,
    }
}

pub fn verify_quotient_identity(n: usize, k: usize, r: usize, budget: &Budget) -> Result<QuotientIdentity> {
    let q = equitable_quotient(n, k, r, budget)?;
    let a = build_arrangement(n, k, r, budget)?;
    Ok(compare_quotient(&q, &a, factorial_usize(n - k) as u64))
}

/// Exact spectrum when integral, numeric otherwise.
fn best_spectrum(m: &SymMatrix, budget: &Budget) -> Result<Spectrum> {
    match spectral::spectrum_exact(m, budget) {
        Ok(ExactOutcome::Spectrum(s)) => Ok(s),
        Ok(ExactOutcome::NonIntegral(_)) => spectral::spectrum_numeric(m, budget),
        Err(Error::BudgetExceeded { .. }) => spectral::spectrum_numeric(m, budget),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct LiftEntry {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub lifted: f64,
    pub host_multiplicity: usize,
}

/// Where each eigenvalue `λ` of `A(n,k,r)` lands as `(n-k)!·λ` in the
/// spectrum of `Γ(S_n, M(r))`.
#[derive(Clone, Debug)]
pub struct LiftReport {
    pub factor: u64,
    pub entries: Vec<LiftEntry>,
    /// Multiset containment holds.
    pub contained: bool,
    /// Both spectra were exact.
    pub exact: bool,
    /// Set when one side was out of budget; nothing was checked.
    pub partial: Option<String>,
}

pub fn lift_eigenvalues(n: usize, k: usize, r: usize, budget: &Budget) -> Result<LiftReport> {
    let factor = factorial_usize(n - k) as u64;
    let a = build_arrangement(n, k, r, budget)?;
    let host_set = m_set_capped(n, k, r, budget.group_degree)?;
    let host = build_cayley(&host_set, budget)?;
    let spectra = best_spectrum(&a.matrix(), budget).and_then(|sa| Ok((sa, best_spectrum(&host.matrix(), budget)?)));
    let (sa, sh) = match spectra {
        Ok(pair) => pair,
        Err(e @ Error::BudgetExceeded { .. }) => {
            return Ok(LiftReport {
                factor,
                entries: Vec::new(),
                contained: false,
                exact: false,
                partial: Some(e.to_string()),
            })
        }
        Err(e) => return Err(e),
    };
    let exact = sa.is_exact() && sh.is_exact();
    let host_pairs: Vec<(f64, usize)> = sh.pairs().iter().map(|&(v, m)| (v.as_f64(), m)).collect();
    let tol = if exact { 0.0 } else { INTEGRALITY_SCREEN };
    let entries: Vec<LiftEntry> = sa
        .pairs()
        .iter()
        .map(|&(v, m)| {
            let lifted = v.as_f64() * factor as f64;
            let host_multiplicity = host_pairs
                .iter()
                .filter(|(h, _)| (h - lifted).abs() <= tol.max(lifted.abs() * 1e-12))
                .map(|&(_, hm)| hm)
                .sum();
            LiftEntry {
                eigenvalue: v.as_f64(),
                multiplicity: m,
                lifted,
                host_multiplicity,
            }
        })
        .collect();
    let contained = entries.iter().all(|e| e.host_multiplicity >= e.multiplicity);
    Ok(LiftReport {
        factor,
        entries,
        contained,
        exact,
        partial: None,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub vertices: usize,
    pub degree: usize,
    /// `None` when the cell was out of budget.
    pub verdict: Option<Verdict>,
    pub min_eig: Option<f64>,
    pub max_eig: Option<f64>,
    pub exact: bool,
}

impl ScanRow {
    /// Only `r = 1` cells are known to be integral in general.
    pub fn observational(&self) -> bool {
        self.r >= 2
    }
}

fn scan_cell(n: usize, k: usize, r: usize, budget: &Budget) -> ScanRow {
    let vertices = factorial_usize(n) / factorial_usize(n - k);
    let degree = m_count_closed_form(n, k, r)
        .ok()
        .and_then(|m| (m / factorial(n - k)).to_usize())
        .unwrap_or(0);
    let skipped = ScanRow {
        n,
        k,
        r,
        vertices,
        degree,
        verdict: None,
        min_eig: None,
        max_eig: None,
        exact: false,
    };
    let Ok(a) = build_arrangement(n, k, r, budget) else {
        return skipped;
    };
    let m = a.matrix();
    let report = spectral::verify_integrality(&m, budget);
    let (min_eig, max_eig) = match &report.spectrum {
        Some(s) => (s.min(), s.max()),
        None if report.certificate.is_some() => {
            let values = numeric_eigenvalues(&m);
            (
                values.iter().copied().reduce(f64::min),
                values.iter().copied().reduce(f64::max),
            )
        }
        None => (None, None),
    };
    ScanRow {
        verdict: Some(report.verdict),
        min_eig,
        max_eig,
        exact: report.exact,
        ..skipped
    }
}

/// Every cell `1 ≤ r ≤ k < n ≤ max_n`, ordered by `(n, k, r)`.
pub fn integrality_scan(max_n: usize, budget: &Budget) -> Vec<ScanRow> {
    let cells: Vec<(usize, usize, usize)> = (2..=max_n)
        .flat_map(|n| (1..n).flat_map(move |k| (1..=k).map(move |r| (n, k, r))))
        .collect();
    cells
        .par_iter()
        .map(|&(n, k, r)| scan_cell(n, k, r, budget))
        .collect()
}

fn format_eig(v: Option<f64>, exact: bool) -> String {
    match v {
        None => String::new(),
        Some(x) if exact => format!("{}", x.round() as i64),
        Some(x) => format!("{x:.6}"),
    }
}

/// CSV with columns `n,k,r,vertices,degree,integral,min_eig,max_eig,exact`
/// plus `observational` (yes for `r ≥ 2`).
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n",
        "k",
        "r",
        "vertices",
        "degree",
        "integral",
        "min_eig",
        "max_eig",
        "exact",
        "observational",
    ])
    .expect("in-memory write");
    for row in rows {
        let integral = match row.verdict {
            None => "skipped",
            Some(Verdict::Integral) => "yes",
            Some(Verdict::NonIntegral) => "no",
            Some(Verdict::Undecided) => "undecided",
        };
        let exact_values = row.exact && row.verdict == Some(Verdict::Integral);
        w.write_record([
            row.n.to_string(),
            row.k.to_string(),
            row.r.to_string(),
            row.vertices.to_string(),
            row.degree.to_string(),
            integral.to_string(),
            format_eig(row.min_eig, exact_values),
            format_eig(row.max_eig, exact_values),
            if row.exact { "yes" } else { "no" }.to_string(),
            if row.observational() { "yes" } else { "no" }.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Spectrum of an arrangement graph, exact when integral.
pub fn arrangement_spectrum(a: &ArrangementGraph, budget: &Budget) -> Result<Spectrum> {
    best_spectrum(&a.matrix(), budget)
}

/// Numeric eigenvalues of `Q`, exact when integral; convenience for the
/// quotient routes.
pub fn quotient_spectrum(q: &QuotientMatrix, budget: &Budget) -> Result<Spectrum> {
    best_spectrum(&q.to_sym_matrix(), budget)
}
