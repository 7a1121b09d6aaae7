//! Generating sets of `S_n`: conjugacy-class unions, the r-cycles through
//! the point 1, the sets `M(r)` of permutations moving exactly `r` points of
//! `{1..k}`, and class unions cut down to permutations whose support straddles
//! the blocks of a ground partition ("nicely separated" sets).

mod spec;

pub use spec::GensetSpec;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{
    conjugacy_class_capped, enumerate_group_capped, CycleType, GroundPartition, Permutation,
    DEFAULT_GROUP_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Cy { r: usize },
    M { k: usize, r: usize },
    ClassUnion,
    NicelySeparated,
    Custom,
    DecompositionPart { block: usize },
}

/// An explicit subset of `S_n` with its structural flags computed at
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    n: usize,
    elements: BTreeSet<Permutation>,
    inverse_closed: bool,
    normal: bool,
    partition: Option<GroundPartition>,
    provenance: Provenance,
    label: String,
}

impl fmt::Debug for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratingSet")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("size", &self.elements.len())
            .field("normal", &self.normal)
            .finish()
    }
}

impl GeneratingSet {
    /// Any explicit set; flags are computed.
    pub fn custom(n: usize, elements: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let elements: BTreeSet<Permutation> = elements.into_iter().collect();
        if let Some(bad) = elements.iter().find(|p| p.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: bad.degree(),
                right: n,
            });
        }
        Ok(Self::assemble(n, elements, None, Provenance::Custom, "custom".into()))
    }

    fn assemble(
        n: usize,
        elements: BTreeSet<Permutation>,
        partition: Option<GroundPartition>,
        provenance: Provenance,
        label: String,
    ) -> Self {
        if elements.is_empty() {
            log::warn!("generating set `{label}` over S_{n} is empty; its Cayley graph has no edges");
        }
        let inverse_closed = inverse_closed(&elements);
        let normal = conjugation_closed(n, &elements);
        Self {
            n,
            elements,
            inverse_closed,
            normal,
            partition,
            provenance,
            label,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &BTreeSet<Permutation> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn contains_identity(&self) -> bool {
        self.elements.contains(&Permutation::identity(self.n))
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverse_closed
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// The ground partition witnessing that the set is nicely separated.
    pub fn partition(&self) -> Option<&GroundPartition> {
        self.partition.as_ref()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Spec-language label used in exports.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Cycle types occurring in the set, each once.
    pub fn cycle_types(&self) -> BTreeSet<CycleType> {
        self.elements.iter().map(Permutation::cycle_type).collect()
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let elements = self.elements.union(&other.elements).cloned().collect();
        let label = format!("{} ∪ {}", self.label, other.label);
        Ok(Self::assemble(self.n, elements, None, Provenance::Custom, label))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let elements = self.elements.difference(&other.elements).cloned().collect();
        let label = format!("{} ∖ {}", self.label, other.label);
        Ok(Self::assemble(self.n, elements, None, Provenance::Custom, label))
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

fn inverse_closed(elements: &BTreeSet<Permutation>) -> bool {
    elements.iter().all(|p| elements.contains(&p.inverse()))
}

/// Closure under conjugation by the adjacent transpositions `(i i+1)`,
/// which generate `S_n`.
fn conjugation_closed(n: usize, elements: &BTreeSet<Permutation>) -> bool {
    (1..n).all(|i| {
        let t = Permutation::from_cycles(n, &[vec![i, i + 1]]).expect("adjacent transposition");
        elements.iter().all(|p| elements.contains(&p.conjugate_by(&t)))
    })
}

pub fn is_inverse_closed(s: &GeneratingSet) -> bool {
    s.is_inverse_closed()
}

pub fn is_normal(s: &GeneratingSet) -> bool {
    s.is_normal()
}

/// Whether `(Σ S₁)(Σ S₂) = (Σ S₂)(Σ S₁)` in the group algebra, decided by
/// comparing the product multisets `{ab}` and `{ba}`.
pub fn are_commutative(s1: &GeneratingSet, s2: &GeneratingSet) -> Result<bool> {
    s1.same_degree(s2)?;
    let mut counts: HashMap<Permutation, i64> = HashMap::new();
    for a in &s1.elements {
        for b in &s2.elements {
            *counts.entry(a.then(b)).or_default() += 1;
            *counts.entry(b.then(a)).or_default() -= 1;
        }
    }
    Ok(counts.values().all(|&c| c == 0))
}

/// The r-cycles that move 1.
pub fn cy(n: usize, r: usize) -> Result<GeneratingSet> {
    cy_capped(n, r, DEFAULT_GROUP_CAP)
}

pub fn cy_capped(n: usize, r: usize, cap: usize) -> Result<GeneratingSet> {
    if r < 2 || r > n {
        return Err(Error::InvalidParameters(format!("cy needs 2 ≤ r ≤ n, got r = {r}, n = {n}")));
    }
    let t = CycleType::cycle(n, r)?;
    let elements: BTreeSet<Permutation> = conjugacy_class_capped(&t, cap)?
        .into_iter()
        .filter(|p| p.apply(1) != 1)
        .collect();
    // {1} | {2..n} separates exactly the r-cycles through 1
    let partition = GroundPartition::split_at(n, 1)?;
    debug_assert!(elements.iter().all(|p| partition.separates(p)));
    Ok(GeneratingSet::assemble(
        n,
        elements,
        Some(partition),
        Provenance::Cy { r },
        format!("cy:{r}"),
    ))
}

/// `{σ : |Move(σ) ∩ {1..k}| = r}`.
pub fn m_set(n: usize, k: usize, r: usize) -> Result<GeneratingSet> {
    m_set_capped(n, k, r, DEFAULT_GROUP_CAP)
}

pub fn m_set_capped(n: usize, k: usize, r: usize, cap: usize) -> Result<GeneratingSet> {
    if !(1 <= r && r <= k && k <= n) {
        return Err(Error::InvalidParameters(format!(
            "M(r) needs 1 ≤ r ≤ k ≤ n, got n = {n}, k = {k}, r = {r}"
        )));
    }
    let elements: BTreeSet<Permutation> = enumerate_group_capped(n, cap)?
        .into_iter()
        .filter(|p| (0..k).filter(|&i| p.images()[i] as usize != i).count() == r)
        .collect();
    Ok(GeneratingSet::assemble(
        n,
        elements,
        None,
        Provenance::M { k, r },
        format!("m:{k},{r}"),
    ))
}

fn check_types(n: usize, types: &[CycleType]) -> Result<()> {
    if let Some(t) = types.iter().find(|t| t.degree() != n) {
        return Err(Error::InvalidCycleType(format!("{t} has degree {}, expected {n}", t.degree())));
    }
    Ok(())
}

fn types_label(types: &[CycleType]) -> String {
    types.iter().map(CycleType::to_string).collect::<Vec<_>>().join("|")
}

/// Union of whole conjugacy classes.
pub fn class_union(n: usize, types: &[CycleType]) -> Result<GeneratingSet> {
    class_union_capped(n, types, DEFAULT_GROUP_CAP)
}

pub fn class_union_capped(n: usize, types: &[CycleType], cap: usize) -> Result<GeneratingSet> {
    check_types(n, types)?;
    if types.iter().any(CycleType::is_identity) {
        return Err(Error::ContainsIdentity);
    }
    let mut elements = BTreeSet::new();
    for t in types {
        elements.extend(conjugacy_class_capped(t, cap)?);
    }
    Ok(GeneratingSet::assemble(
        n,
        elements,
        None,
        Provenance::ClassUnion,
        format!("classes:{}", types_label(types)),
    ))
}

/// `T(T₁, …, T_l)`: permutations whose support is not inside a single block.
pub fn t_complement(p: &GroundPartition) -> Result<Vec<Permutation>> {
    Ok(enumerate_group_capped(p.degree(), DEFAULT_GROUP_CAP)?
        .into_iter()
        .filter(|g| p.separates(g))
        .collect())
}

/// `(⋃ classes) ∩ T(T₁, …, T_l)`.
pub fn nicely_separated(n: usize, types: &[CycleType], p: &GroundPartition) -> Result<GeneratingSet> {
    nicely_separated_capped(n, types, p, DEFAULT_GROUP_CAP)
}

pub fn nicely_separated_capped(
    n: usize,
    types: &[CycleType],
    p: &GroundPartition,
    cap: usize,
) -> Result<GeneratingSet> {
    check_types(n, types)?;
    if p.degree() != n {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: n,
        });
    }
    let mut elements = BTreeSet::new();
    for t in types {
        elements.extend(
            conjugacy_class_capped(t, cap)?
                .into_iter()
                .filter(|g| p.separates(g)),
        );
    }
    let set = GeneratingSet::assemble(
        n,
        elements,
        Some(p.clone()),
        Provenance::NicelySeparated,
        format!("nicesep:{};{p}", types_label(types)),
    );
    if !set.inverse_closed {
        return Err(Error::InvariantViolation(format!(
            "nicely separated set {} is not inverse-closed",
            set.label
        )));
    }
    Ok(set)
}

/// `S = S₀ ∖ ⋃ Sᵢ` where `S₀` is the union of the classes met by `S` and
/// `Sᵢ = S₀ ∩ S_n(Tᵢ)`. Empty parts are dropped.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub whole: GeneratingSet,
    pub parts: Vec<GeneratingSet>,
}

impl Decomposition {
    /// `⋃ Sᵢ` as a single set.
    pub fn parts_union(&self) -> GeneratingSet {
        let elements = self.parts.iter().flat_map(|p| p.elements.iter().cloned()).collect();
        GeneratingSet::assemble(
            self.whole.n,
            elements,
            None,
            Provenance::Custom,
            format!("⋃ parts of {}", self.whole.label),
        )
    }

    /// `S₀ ∖ ⋃ Sᵢ`.
    pub fn reconstruct(&self) -> BTreeSet<Permutation> {
        let mut kept = self.whole.elements.clone();
        for part in &self.parts {
            kept.retain(|p| !part.elements.contains(p));
        }
        kept
    }
}

pub fn decompose(s: &GeneratingSet) -> Result<Decomposition> {
    let partition = s.partition.as_ref().ok_or(Error::MissingPartition)?;
    let types: Vec<CycleType> = s.cycle_types().into_iter().collect();
    let mut whole = class_union(s.n, &types)?;
    whole.label = format!("classes of {}", s.label);
    let parts = partition
        .blocks()
        .iter()
        .enumerate()
        .filter_map(|(i, block)| {
            let elements: BTreeSet<Permutation> = whole
                .elements
                .iter()
                .filter(|g| g.moves_only(block))
                .cloned()
                .collect();
            (!elements.is_empty()).then(|| {
                GeneratingSet::assemble(
                    s.n,
                    elements,
                    None,
                    Provenance::DecompositionPart { block: i },
                    format!("part {i} of {}", s.label),
                )
            })
        })
        .collect();
    Ok(Decomposition { whole, parts })
}
