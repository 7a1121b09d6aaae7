//! Cayley graphs `Γ(S_n, S)` on canonical vertex ids, their spectra, the
//! disjoint-union reduction for sets supported inside a Young subgroup, and
//! explicit checks of the commuting-combination rules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genset::{are_commutative, GeneratingSet};
use crate::graph::{Graph, SymMatrix, Symmetry};
use crate::perm::{factorial_usize, lex_permutations, Permutation};
use crate::spectral::{self, ExactOutcome, IntegralityReport};
use crate::spectrum::{Spectrum, INTEGRALITY_SCREEN};
use crate::Budget;

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    n: usize,
    genset: GeneratingSet,
    graph: Graph,
}

impl CayleyGraph {
    pub fn degree_n(&self) -> usize {
        self.n
    }

    pub fn genset(&self) -> &GeneratingSet {
        &self.genset
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn matrix(&self) -> SymMatrix {
        self.graph.to_matrix()
    }

    pub fn spectrum_numeric(&self, budget: &Budget) -> Result<Spectrum> {
        spectral::spectrum_numeric(&self.matrix(), budget)
    }

    pub fn spectrum_exact(&self, budget: &Budget) -> Result<ExactOutcome> {
        spectral::spectrum_exact(&self.matrix(), budget)
    }

    pub fn verify_integrality(&self, budget: &Budget) -> IntegralityReport {
        spectral::verify_integrality(&self.matrix(), budget)
    }

    /// Edge list with `n` and the generating-set label in the header.
    pub fn edge_list(&self) -> String {
        self.graph.edge_list(&[
            format!("cayley n {}", self.n),
            format!("genset {}", self.genset.label()),
        ])
    }
}

/// Edges `{u, s·u}` for every vertex `u` and generator `s`.
pub fn build_cayley(s: &GeneratingSet, budget: &Budget) -> Result<CayleyGraph> {
    let n = s.degree();
    if n > budget.group_degree {
        return Err(Error::CapExceeded {
            what: "Cayley graph construction",
            requested: n,
            cap: budget.group_degree,
        });
    }
    if !s.is_inverse_closed() {
        return Err(Error::NotInverseClosed);
    }
    if s.contains_identity() {
        return Err(Error::ContainsIdentity);
    }
    let vertices = lex_permutations(n);
    let gens: Vec<&Permutation> = s.elements().iter().collect();
    let adj: Vec<Vec<u32>> = vertices
        .par_iter()
        .map(|u| {
            let mut nb: Vec<u32> = gens.iter().map(|g| g.then(u).rank() as u32).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    Ok(CayleyGraph {
        n,
        genset: s.clone(),
        graph: Graph::with_symmetry(adj, Symmetry::RightTranslation { n }),
    })
}

/// Spectrum of `Γ(S_n, S)` for `S ⊆ S_n(T)`: the graph is `n!/|T|!` copies
/// of `Γ(S_{|T|}, S)`, so the small spectrum is computed and repeated.
pub fn disjoint_union_spectrum(
    n: usize,
    t: &BTreeSet<usize>,
    s: &GeneratingSet,
    budget: &Budget,
) -> Result<Spectrum> {
    if s.degree() != n {
        return Err(Error::DegreeMismatch {
            left: s.degree(),
            right: n,
        });
    }
    if let Some(bad) = s.elements().iter().find(|p| !p.moves_only(t)) {
        return Err(Error::SupportViolation(format!(
            "{} moves points outside the support",
            bad.cycle_notation()
        )));
    }
    let m = t.len();
    let relabel: BTreeMap<usize, usize> = t.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
    let small = s
        .elements()
        .iter()
        .map(|p| {
            let images: Vec<usize> = t.iter().map(|&x| relabel[&p.apply(x)]).collect();
            Permutation::from_images(&images)
        })
        .collect::<Result<Vec<_>>>()?;
    let small = GeneratingSet::custom(m.max(1), if m == 0 { Vec::new() } else { small })?;
    let graph = build_cayley(&small, budget)?;
    let spectrum = match graph.spectrum_exact(budget)? {
        ExactOutcome::Spectrum(sp) => sp,
        ExactOutcome::NonIntegral(_) => graph.spectrum_numeric(budget)?,
    };
    let copies = factorial_usize(n) / factorial_usize(m.max(1));
    Ok(spectrum.repeated(copies))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Outcome of the four commuting-combination checks on explicit matrices.
#[derive(Clone, Debug)]
pub struct CombinationReport {
    /// `(Σ S₁)(Σ S₂) = (Σ S₂)(Σ S₁)` in the group algebra.
    pub group_algebra_commute: bool,
    pub items: Vec<CheckItem>,
}

impl CombinationReport {
    /// No item failed.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != CheckStatus::Fail)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

impl fmt::Display for CombinationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{} {}: {}", item.status, item.name, item.detail)?;
        }
        Ok(())
    }
}

enum Eigen {
    Exact(BTreeMap<i64, usize>),
    Numeric(Vec<f64>),
}

impl Eigen {
    fn of(m: &SymMatrix, budget: &Budget) -> Result<Self> {
        Ok(match spectral::spectrum_exact(m, budget)? {
            ExactOutcome::Spectrum(s) => Eigen::Exact(s.integer_map().expect("exact")),
            ExactOutcome::NonIntegral(_) => Eigen::Numeric(spectral::numeric_eigenvalues(m)),
        })
    }

    fn values(&self) -> Vec<f64> {
        match self {
            Eigen::Exact(map) => map.keys().map(|&v| v as f64).collect(),
            Eigen::Numeric(v) => v.clone(),
        }
    }
}

/// Whether every eigenvalue of `target` has the form `λ + sign·γ`.
fn contained_in_combination(target: &Eigen, a: &Eigen, b: &Eigen, sign: i64) -> (bool, String) {
    if let (Eigen::Exact(t), Eigen::Exact(x), Eigen::Exact(y)) = (target, a, b) {
        let set: BTreeSet<i64> = x
            .keys()
            .flat_map(|&l| y.keys().map(move |&g| l + sign * g))
            .collect();
        return match t.keys().find(|v| !set.contains(v)) {
            None => (true, format!("{} distinct eigenvalues, all exact", t.len())),
            Some(v) => (false, format!("eigenvalue {v} is not of the form λ {} γ", if sign > 0 { '+' } else { '-' })),
        };
    }
    let candidates: Vec<f64> = a
        .values()
        .iter()
        .flat_map(|&l| b.values().into_iter().map(move |g| l + sign as f64 * g))
        .collect();
    match target
        .values()
        .into_iter()
        .find(|v| !candidates.iter().any(|c| (c - v).abs() <= INTEGRALITY_SCREEN))
    {
        None => (true, "all eigenvalues matched numerically".into()),
        Some(v) => (false, format!("eigenvalue {v:.10} has no match")),
    }
}

/// Checks on explicit adjacency matrices `A₁`, `A₂` of `Γ(S_n, S₁)`,
/// `Γ(S_n, S₂)`:
/// (a) `A₁A₂ = A₂A₁`;
/// (b) eigenvalues of `A₁ + A₂` lie in `{λ + γ}`;
/// (c) eigenvalues of `A₁ - A₂` lie in `{λ - γ}`;
/// (d) `A(S₁ ∪ S₂) = A₁ + A₂` for disjoint sets and `A(S₁ ∖ S₂) = A₁ - A₂`
/// for `S₂ ⊆ S₁`.
/// Items whose precondition fails are recorded as not applicable.
pub fn commuting_combination_check(
    s1: &GeneratingSet,
    s2: &GeneratingSet,
    budget: &Budget,
) -> Result<CombinationReport> {
    let group_algebra_commute = are_commutative(s1, s2)?;
    let g1 = build_cayley(s1, budget)?;
    let g2 = build_cayley(s2, budget)?;
    let (a1, a2) = (g1.matrix(), g2.matrix());
    let mut items = Vec::new();

    let commute = a1.product_rows(&a2) == a2.product_rows(&a1);
    items.push(CheckItem {
        name: "matrices commute",
        status: if commute { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!(
            "A1·A2 {} A2·A1 (group-algebra products {})",
            if commute { "==" } else { "!=" },
            if group_algebra_commute { "agree" } else { "differ" }
        ),
    });

    if commute {
        let sum = a1.combine(1, &a2, 1)?;
        let diff = a1.combine(1, &a2, -1)?;
        let e1 = Eigen::of(&a1, budget)?;
        let e2 = Eigen::of(&a2, budget)?;
        let (ok, detail) = contained_in_combination(&Eigen::of(&sum, budget)?, &e1, &e2, 1);
        items.push(CheckItem {
            name: "sum eigenvalues in sumset",
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        });
        let (ok, detail) = contained_in_combination(&Eigen::of(&diff, budget)?, &e1, &e2, -1);
        items.push(CheckItem {
            name: "difference eigenvalues in difference set",
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        });

        let disjoint = s1.elements().is_disjoint(s2.elements());
        let nested = s2.elements().is_subset(s1.elements());
        if disjoint {
            let union = build_cayley(&s1.union(s2)?, budget)?.matrix();
            let ok = union.combine(1, &sum, -1)?.is_zero();
            items.push(CheckItem {
                name: "union adjacency is the sum",
                status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
                detail: "A(S1 ∪ S2) == A1 + A2".into(),
            });
        }
        if nested {
            let rest = build_cayley(&s1.difference(s2)?, budget)?.matrix();
            let ok = rest.combine(1, &diff, -1)?.is_zero();
            items.push(CheckItem {
                name: "difference adjacency is the difference",
                status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
                detail: "A(S1 ∖ S2) == A1 - A2".into(),
            });
        }
        if !disjoint && !nested {
            items.push(CheckItem {
                name: "union/difference adjacency",
                status: CheckStatus::NotApplicable,
                detail: "sets neither disjoint nor nested".into(),
            });
        }
    } else {
        for name in [
            "sum eigenvalues in sumset",
            "difference eigenvalues in difference set",
            "union/difference adjacency",
        ] {
            items.push(CheckItem {
                name,
                status: CheckStatus::NotApplicable,
                detail: "matrices do not commute".into(),
            });
        }
    }
    Ok(CombinationReport {
        group_algebra_commute,
        items,
    })
}
