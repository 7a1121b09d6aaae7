//! Simple undirected graphs on canonical vertex ids and sparse symmetric
//! integer matrices built from them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A vertex-transitive group action known from the construction. Matrices
/// that share a symmetry commute with the same permutation matrices, so a
/// single vertex orbit representative suffices for exact checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    None,
    /// `u ↦ u·g` on `S_n`; every Cayley graph of `S_n` has it.
    RightTranslation { n: usize },
    /// Relabelling the values of k-tuples by `S_n`.
    ValueRelabelling { n: usize, k: usize },
}

/// Sorted neighbour lists; no loops, no multi-edges, symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    symmetry: Symmetry,
}

impl Graph {
    /// Validates symmetry and loop-freeness.
    pub fn from_neighbors(mut adj: Vec<Vec<u32>>) -> Result<Self> {
        let n = adj.len();
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.iter().any(|&u| u as usize >= n) {
                return Err(Error::InvalidParameters(format!("vertex {v} has an out-of-range neighbour")));
            }
            if list.binary_search(&(v as u32)).is_ok() {
                return Err(Error::InvalidParameters(format!("loop at vertex {v}")));
            }
        }
        let g = Self {
            adj,
            symmetry: Symmetry::None,
        };
        for v in 0..n {
            if g.adj[v].iter().any(|&u| !g.has_edge(u as usize, v)) {
                return Err(Error::InvalidParameters(format!("adjacency of vertex {v} is not symmetric")));
            }
        }
        Ok(g)
    }

    pub(crate) fn with_symmetry(adj: Vec<Vec<u32>>, symmetry: Symmetry) -> Self {
        Self { adj, symmetry }
    }

    pub fn path(len: usize) -> Self {
        let adj = (0..len)
            .map(|v| {
                let mut nb = Vec::new();
                if v > 0 {
                    nb.push(v as u32 - 1);
                }
                if v + 1 < len {
                    nb.push(v as u32 + 1);
                }
                nb
            })
            .collect();
        Self::with_symmetry(adj, Symmetry::None)
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidParameters(format!("edge ({u}, {v}) out of range")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        Self::from_neighbors(adj)
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    /// Whether the vertices split into two classes with every edge crossing.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.adj.len();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = colour[v].expect("coloured");
                for &u in &self.adj[v] {
                    match colour[u as usize] {
                        None => {
                            colour[u as usize] = Some(!c);
                            stack.push(u as usize);
                        }
                        Some(cu) if cu == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.expect("coloured")).collect())
    }

    pub fn component_count(&self) -> usize {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u as usize);
                    }
                }
            }
        }
        count
    }

    pub fn to_matrix(&self) -> SymMatrix {
        SymMatrix {
            rows: self
                .adj
                .iter()
                .map(|l| l.iter().map(|&u| (u, 1)).collect())
                .collect(),
            symmetry: self.symmetry,
        }
    }

    /// `# key value` header lines followed by one `u v` pair per line.
    pub fn edge_list(&self, header: &[String]) -> String {
        let mut out = String::new();
        for line in header {
            let _ = writeln!(out, "# {line}");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Sparse symmetric integer matrix; rows sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    rows: Vec<Vec<(u32, i64)>>,
    symmetry: Symmetry,
}

impl SymMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i]
            .binary_search_by_key(&(j as u32), |&(c, _)| c)
            .map_or(0, |k| self.rows[i][k].1)
    }

    /// Rows of `(column, weight)`; must be symmetric.
    pub fn from_weighted_rows(mut rows: Vec<Vec<(u32, i64)>>) -> Self {
        for row in &mut rows {
            row.sort_unstable();
            row.retain(|&(_, v)| v != 0);
        }
        Self {
            rows,
            symmetry: Symmetry::None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Vertices whose orbits under the known symmetry cover everything.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        match self.symmetry {
            Symmetry::None => (0..self.dim()).collect(),
            _ if self.dim() == 0 => Vec::new(),
            _ => vec![0],
        }
    }

    /// `a·self + b·other`; the symmetry survives only if both share it.
    pub fn combine(&self, a: i64, other: &Self, b: i64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DegreeMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(x, y)| {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(c, v) in x {
                    *acc.entry(c).or_default() += a * v;
                }
                for &(c, v) in y {
                    *acc.entry(c).or_default() += b * v;
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        let symmetry = if self.symmetry == other.symmetry {
            self.symmetry
        } else {
            Symmetry::None
        };
        Ok(Self { rows, symmetry })
    }

    /// Product `self · other` as row maps (not necessarily symmetric).
    pub fn product_rows(&self, other: &Self) -> Vec<BTreeMap<u32, i64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k as usize] {
                        *acc.entry(c).or_default() += a * b;
                    }
                }
                acc.retain(|_, v| *v != 0);
                acc
            })
            .collect()
    }

    /// Largest absolute row sum; bounds every eigenvalue in absolute value.
    pub fn row_sum_bound(&self) -> i64 {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(_, v)| v.abs()).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j as usize)] = v as f64;
            }
        }
        m
    }

    /// `A·x` in exact arithmetic.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for &(j, v) in row {
                    let xj = &x[j as usize];
                    if !xj.is_zero() {
                        acc += xj * v;
                    }
                }
                acc
            })
            .collect()
    }

    /// `tr(A^p)` for `p ∈ {1, 2, 3}`, exact.
    pub fn trace_power(&self, p: u32) -> i128 {
        match p {
            0 => self.dim() as i128,
            1 => (0..self.dim()).map(|i| self.entry(i, i) as i128).sum(),
            2 => self
                .rows
                .iter()
                .map(|r| r.iter().map(|&(_, v)| (v as i128) * (v as i128)).sum::<i128>())
                .sum(),
            3 => {
                let mut total = 0i128;
                for (i, row) in self.rows.iter().enumerate() {
                    for &(j, a) in row {
                        // Σ_k A[i][j]·A[j][k]·A[k][i], with A[k][i] = A[i][k]
                        let mut inner = 0i128;
                        for &(k, b) in &self.rows[j as usize] {
                            inner += b as i128 * self.entry(i, k as usize) as i128;
                        }
                        total += a as i128 * inner;
                    }
                }
                total
            }
            _ => panic!("trace_power supports p ≤ 3"),
        }
    }
}
