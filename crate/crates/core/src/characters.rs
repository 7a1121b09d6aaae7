//! Irreducible characters of `S_n` by the Murnaghan–Nakayama rule, and the
//! character formula for spectra of normal Cayley graphs.
//!
//! Rim hooks are removed on the beta-set (abacus) of a shape: removing a
//! hook of length `r` moves one bead from position `b` to an empty position
//! `b - r`, with sign `(-1)^(beads strictly between)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genset::GeneratingSet;
use crate::perm::{cycle_types, factorial, CycleType};
use crate::spectrum::Spectrum;

pub const DEFAULT_CHARACTER_CAP: usize = 12;

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not a weakly decreasing list of positive integers"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let parts = (1..=self.parts[0])
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Self { parts }
    }
}

/// `(3,1)`.
impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first,
/// `(1,…,1)` last.
pub fn partitions_of(n: usize) -> Vec<IntegerPartition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if remaining == 0 {
            out.push(IntegerPartition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

type MemoKey = (Vec<u8>, Vec<u8>);

/// Memoised Murnaghan–Nakayama evaluator. Safe to share between threads;
/// concurrent inserts of the same key always store the same value.
#[derive(Default)]
pub struct CharacterEngine {
    memo: RwLock<HashMap<MemoKey, i64>>,
}

impl CharacterEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ_λ(μ)`.
    pub fn value(&self, lambda: &IntegerPartition, mu: &CycleType) -> Result<i64> {
        if lambda.size() != mu.degree() {
            return Err(Error::DegreeMismatch {
                left: lambda.size(),
                right: mu.degree(),
            });
        }
        let shape: Vec<u8> = lambda.parts.iter().map(|&p| p as u8).collect();
        let lengths: Vec<u8> = mu.lengths().into_iter().map(|l| l as u8).collect();
        Ok(self.chi(&shape, &lengths))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    fn chi(&self, shape: &[u8], lengths: &[u8]) -> i64 {
        let Some((&r, tail)) = lengths.split_first() else {
            return i64::from(shape.is_empty());
        };
        if let Some(&v) = self.memo.read().expect("memo lock").get(&(shape.to_vec(), lengths.to_vec())) {
            return v;
        }
        let len = shape.len();
        let beta: Vec<i32> = shape
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i32 + (len - 1 - i) as i32)
            .collect();
        let r = r as i32;
        let mut total = 0i64;
        for (i, &b) in beta.iter().enumerate() {
            let target = b - r;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            // beta is strictly decreasing
            let between = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut moved = beta.clone();
            moved[i] = target;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let sub_shape: Vec<u8> = moved
                .iter()
                .enumerate()
                .map(|(j, &x)| (x - (len - 1 - j) as i32) as u8)
                .filter(|&p| p > 0)
                .collect();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            total += sign * self.chi(&sub_shape, tail);
        }
        self.memo
            .write()
            .expect("memo lock")
            .insert((shape.to_vec(), lengths.to_vec()), total);
        total
    }
}

fn shared_engine() -> &'static CharacterEngine {
    static ENGINE: OnceLock<CharacterEngine> = OnceLock::new();
    ENGINE.get_or_init(CharacterEngine::new)
}

/// `χ_λ(μ)` through a process-wide memo.
pub fn character_value(lambda: &IntegerPartition, mu: &CycleType) -> Result<i64> {
    shared_engine().value(lambda, mu)
}

/// Rows are partitions (reverse-lexicographic), columns are cycle types
/// with the identity class first.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<IntegerPartition>,
    classes: Vec<CycleType>,
    values: Vec<Vec<i64>>,
}

pub fn character_table(n: usize) -> Result<CharacterTable> {
    character_table_capped(n, DEFAULT_CHARACTER_CAP)
}

pub fn character_table_capped(n: usize, cap: usize) -> Result<CharacterTable> {
    if n == 0 {
        return Err(Error::InvalidParameters("degree must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "character table",
            requested: n,
            cap,
        });
    }
    let partitions = partitions_of(n);
    let classes = cycle_types(n);
    let engine = shared_engine();
    let values = partitions
        .par_iter()
        .map(|lambda| {
            classes
                .iter()
                .map(|mu| engine.value(lambda, mu))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable {
        n,
        partitions,
        classes,
        values,
    })
}

impl CharacterTable {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[IntegerPartition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn value(&self, row: usize, col: usize) -> i64 {
        self.values[row][col]
    }

    /// `χ(1)` for each row, read from the identity column.
    pub fn dims(&self) -> Vec<i64> {
        let id = self
            .classes
            .iter()
            .position(CycleType::is_identity)
            .expect("identity class present");
        self.values.iter().map(|row| row[id]).collect()
    }

    pub fn class_index(&self, t: &CycleType) -> Option<usize> {
        self.classes.iter().position(|c| c == t)
    }

    /// Both orthogonality relations and `Σ χ(1)² = n!`, in exact arithmetic.
    pub fn check_orthogonality(&self) -> Result<()> {
        let order = BigInt::from(factorial(self.n));
        let sizes: Vec<BigInt> = self.classes.iter().map(|c| BigInt::from(c.class_size())).collect();
        for a in 0..self.values.len() {
            for b in a..self.values.len() {
                let s: BigInt = (0..self.classes.len())
                    .map(|c| &sizes[c] * self.values[a][c] * self.values[b][c])
                    .sum();
                let expected = if a == b { order.clone() } else { BigInt::zero() };
                if s != expected {
                    return Err(Error::InvariantViolation(format!(
                        "row orthogonality fails for {} and {}: {s}",
                        self.partitions[a], self.partitions[b]
                    )));
                }
            }
        }
        for c in 0..self.classes.len() {
            for d in c..self.classes.len() {
                let s: i128 = self
                    .values
                    .iter()
                    .map(|row| row[c] as i128 * row[d] as i128)
                    .sum();
                let s = BigInt::from(s);
                let expected = if c == d { &order / &sizes[c] } else { BigInt::zero() };
                if s != expected {
                    return Err(Error::InvariantViolation(format!(
                        "column orthogonality fails for {} and {}: {s}",
                        self.classes[c], self.classes[d]
                    )));
                }
            }
        }
        let dims: BigInt = self.dims().iter().map(|&d| BigInt::from(d) * d).sum();
        if dims != order {
            return Err(Error::InvariantViolation(format!("Σ χ(1)² = {dims}, not n!")));
        }
        Ok(())
    }

    /// Header of cycle types, one row per partition, integer cells.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["partition".to_string()];
        header.extend(self.classes.iter().map(CycleType::to_string));
        w.write_record(&header).expect("in-memory write");
        for (lambda, row) in self.partitions.iter().zip(&self.values) {
            let mut record = vec![lambda.to_string()];
            record.extend(row.iter().map(i64::to_string));
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

/// Spectrum of a normal Cayley graph from class counts: each irreducible
/// `χ_λ` contributes `η = Σ_μ |S ∩ K(μ)|·χ_λ(μ) / χ_λ(1)` with multiplicity
/// `χ_λ(1)²`. `class_counts` must list whole classes.
pub fn spectrum_from_classes(n: usize, class_counts: &BTreeMap<CycleType, BigInt>) -> Result<Spectrum> {
    let table = character_table(n)?;
    let dims = table.dims();
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for (row, lambda) in table.partitions().iter().enumerate() {
        let mut sum = BigInt::zero();
        for (t, count) in class_counts {
            let col = table
                .class_index(t)
                .ok_or_else(|| Error::InvalidCycleType(format!("{t} is not a type of S_{n}")))?;
            sum += count * table.value(row, col);
        }
        let dim = BigInt::from(dims[row]);
        let (eta, rem) = sum.div_rem(&dim);
        if !rem.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "eigenvalue for {lambda} is {sum}/{dim}, not an integer"
            )));
        }
        let eta = eta
            .to_i64()
            .ok_or_else(|| Error::InvariantViolation(format!("eigenvalue {eta} overflows i64")))?;
        *out.entry(eta).or_default() += (dims[row] * dims[row]) as usize;
    }
    Ok(Spectrum::from_exact(out))
}

/// Exact spectrum of `Γ(S_n, S)` for a conjugation-closed `S`.
pub fn normal_cayley_spectrum(s: &GeneratingSet) -> Result<Spectrum> {
    if s.contains_identity() {
        return Err(Error::ContainsIdentity);
    }
    if !s.is_inverse_closed() {
        return Err(Error::NotInverseClosed);
    }
    if !s.is_normal() {
        return Err(Error::NotNormal);
    }
    let mut counts: BTreeMap<CycleType, BigInt> = BTreeMap::new();
    for g in s.elements() {
        *counts.entry(g.cycle_type()).or_insert_with(BigInt::zero) += 1;
    }
    for (t, c) in &counts {
        if *c != BigInt::from(t.class_size()) {
            return Err(Error::NotNormal);
        }
    }
    spectrum_from_classes(s.degree(), &counts)
}
