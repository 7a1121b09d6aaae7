//! Permutations of `{1, …, n}`, cycle types, conjugacy classes, the
//! pointwise stabilisers `S_n(T)` and their right cosets.
//!
//! Products are read left to right: in `a · b` the left factor acts first,
//! so `(a · b)(i) = b(a(i))`. Under this convention
//! `(1 2 3) · (2 3) = (1 3)` and `g⁻¹ · (c₁ … c_l) · g = (g(c₁) … g(c_l))`.
//!
//! Points are 1-based in every public signature and textual format; images
//! are stored 0-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, ParseError, Result};

/// Largest degree for which whole groups are enumerated unless a caller
/// raises the cap explicitly.
pub const DEFAULT_GROUP_CAP: usize = 8;

/// Hard ceiling imposed by the `u8` image storage.
const MAX_DEGREE: usize = 255;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Self {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based one-line image array.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::NotAPermutation(format!("degree {n} out of range")));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[v - 1] = true;
            out.push((v - 1) as u8);
        }
        Ok(Self { images: out })
    }

    /// Builds a permutation of degree `n` from 1-based cycles. Cycles must be
    /// pairwise disjoint.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::NotAPermutation(format!("degree {n} out of range")));
        }
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > n || used[p - 1] {
                    return Err(Error::NotAPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..={n}"
                    )));
                }
                used[p - 1] = true;
            }
            for (j, &p) in cycle.iter().enumerate() {
                let next = cycle[(j + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u8;
            }
        }
        Ok(Self { images })
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Self { images }
    }

    /// Parses either a one-line image array (`"3 1 2"`) or cycle notation
    /// (`"(1 3 2)(4 5)"`, `"()"` for the identity). Cycle notation needs the
    /// degree; one-line notation carries it and must agree with `n` when
    /// given.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('(') {
            let n = n.ok_or_else(|| {
                ParseError::new(trimmed, 0, "cycle notation needs an explicit degree")
            })?;
            let cycles = parse_cycles(text)?;
            return Self::from_cycles(n, &cycles);
        }
        let mut images = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map_or(offset, |p| p + offset);
            offset = position + token.len();
            let v: usize = token
                .parse()
                .map_err(|_| ParseError::new(token, position, "expected a positive integer"))?;
            images.push(v);
        }
        let p = Self::from_images(&images)?;
        if let Some(n) = n {
            if n != p.degree() {
                return Err(Error::DegreeMismatch {
                    left: p.degree(),
                    right: n,
                });
            }
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 0-based image array.
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// 1-based image array.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self · other`: `self` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Self) -> Self {
        Self {
            images: self
                .images
                .iter()
                .map(|&v| other.images[v as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            out[v as usize] = i as u8;
        }
        Self { images: out }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Self) -> Result<Self> {
        self.check_degree(g)?;
        Ok(self.conjugate_by(g))
    }

    pub(crate) fn conjugate_by(&self, g: &Self) -> Self {
        // (g⁻¹ a g)(g(i)) = g(a(i))
        let mut out = vec![0u8; self.images.len()];
        for (i, &a) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[a as usize];
        }
        Self { images: out }
    }

    /// Disjoint cycles of length ≥ 2, each rotated to start at its minimum,
    /// sorted by that minimum. 1-based.
    pub fn cycle_decomposition(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur] as usize;
            }
            if cycle.len() >= 2 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.images.len();
        let mut counts = vec![0u32; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = self.images[cur] as usize;
            }
            counts[len - 1] += 1;
        }
        CycleType { counts }
    }

    /// Points not fixed, 1-based.
    pub fn move_set(&self) -> BTreeSet<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i != v as usize)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Whether every moved point lies in `support` (1-based).
    pub fn moves_only(&self, support: &BTreeSet<usize>) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v as usize || support.contains(&(i + 1)))
    }

    /// Lexicographic rank of the image array among all of `S_n`; this is the
    /// canonical vertex id.
    pub fn rank(&self) -> usize {
        let n = self.images.len();
        let mut used: u64 = 0;
        let mut rank = 0usize;
        for (pos, &v) in self.images.iter().enumerate() {
            let smaller_unused = (v as u64 - (used & ((1u64 << v) - 1)).count_ones() as u64) as usize;
            rank = rank * (n - pos) + smaller_unused;
            used |= 1 << v;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Self {
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let mut radix = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            radix[i] = radix[i + 1] * (n - 1 - i);
        }
        let mut images = Vec::with_capacity(n);
        for r in radix {
            let idx = rank / r;
            rank %= r;
            images.push(pool.remove(idx));
        }
        Self { images }
    }

    /// Cycle notation, `"()"` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycle_decomposition();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

/// One-line notation: `"3 1 2"`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number = String::new();
    let mut number_start = 0;
    let flush = |number: &mut String, start: usize, cycle: &mut Vec<usize>| -> Result<()> {
        if !number.is_empty() {
            let v = number
                .parse::<usize>()
                .map_err(|_| ParseError::new(number.clone(), start, "expected a point"))?;
            cycle.push(v);
            number.clear();
        }
        Ok(())
    };
    for (pos, ch) in text.char_indices() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(ParseError::new("(", pos, "nested cycle").into());
                }
                current = Some(Vec::new());
            }
            ')' => {
                let mut cycle = current
                    .take()
                    .ok_or_else(|| ParseError::new(")", pos, "unbalanced parenthesis"))?;
                flush(&mut number, number_start, &mut cycle)?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
            }
            c if c.is_ascii_digit() => {
                if current.is_none() {
                    return Err(ParseError::new(c.to_string(), pos, "point outside a cycle").into());
                }
                if number.is_empty() {
                    number_start = pos;
                }
                number.push(c);
            }
            c if c.is_whitespace() || c == ',' => {
                if let Some(cycle) = current.as_mut() {
                    flush(&mut number, number_start, cycle)?;
                }
            }
            c => return Err(ParseError::new(c.to_string(), pos, "unexpected character").into()),
        }
    }
    if current.is_some() {
        return Err(ParseError::new(text.trim(), text.len(), "unterminated cycle").into());
    }
    Ok(cycles)
}

/// The type `1^{a₁} 2^{a₂} … n^{a_n}`; `counts[i - 1] = aᵢ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<u32>,
}

impl CycleType {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        let n = counts.len();
        let total: usize = counts
            .iter()
            .enumerate()
            .map(|(i, &a)| (i + 1) * a as usize)
            .sum();
        if n == 0 || total != n {
            return Err(Error::InvalidCycleType(format!(
                "Σ i·aᵢ = {total} but the type has length {n}"
            )));
        }
        Ok(Self { counts })
    }

    /// From a multiset of cycle lengths (fixed points included as 1s).
    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        let n: usize = lengths.iter().sum();
        if n == 0 || lengths.contains(&0) {
            return Err(Error::InvalidCycleType(format!("lengths {lengths:?}")));
        }
        let mut counts = vec![0u32; n];
        for &l in lengths {
            counts[l - 1] += 1;
        }
        Ok(Self { counts })
    }

    pub fn identity(n: usize) -> Self {
        let mut counts = vec![0u32; n];
        counts[0] = n as u32;
        Self { counts }
    }

    /// A single r-cycle plus fixed points.
    pub fn cycle(n: usize, r: usize) -> Result<Self> {
        if r < 2 || r > n {
            return Err(Error::InvalidCycleType(format!("{r}-cycle in degree {n}")));
        }
        let mut lengths = vec![r];
        lengths.extend(std::iter::repeat(1).take(n - r));
        Self::from_lengths(&lengths)
    }

    pub fn degree(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &a) in self.counts.iter().enumerate().rev() {
            out.extend(std::iter::repeat(i + 1).take(a as usize));
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.counts[0] as usize == self.counts.len()
    }

    /// Number of points moved by any element of this type.
    pub fn moved_points(&self) -> usize {
        self.degree() - self.counts[0] as usize
    }

    /// `n! / ∏ aᵢ! i^{aᵢ}`.
    pub fn class_size(&self) -> BigUint {
        let n = self.degree();
        let mut num = factorial(n);
        let mut den = BigUint::one();
        for (i, &a) in self.counts.iter().enumerate() {
            den *= factorial(a as usize);
            den *= BigUint::from(i + 1).pow(a);
        }
        num /= &den;
        num
    }

    /// The element with consecutive cycles `(1 … l₁)(l₁+1 … )…`, longest first.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for l in self.lengths() {
            if l >= 2 {
                cycles.push((next..next + l).collect());
            }
            next += l;
        }
        Permutation::from_cycles(self.degree(), &cycles).expect("valid consecutive cycles")
    }

    /// Parses exponent notation such as `"1^2 2^1"`; a bare `"3"` means
    /// `3^1`. The degree is `Σ i·aᵢ`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, 0)
    }

    pub(crate) fn parse_at(text: &str, base: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map_or(offset, |p| p + offset);
            offset = position + token.len();
            let (len, exp) = match token.split_once('^') {
                Some((l, e)) => (l, e),
                None => (token, "1"),
            };
            let len: usize = len.parse().map_err(|_| {
                ParseError::new(token, base + position, "expected <length>^<count>")
            })?;
            let exp: u32 = exp.parse().map_err(|_| {
                ParseError::new(token, base + position, "expected <length>^<count>")
            })?;
            if len == 0 {
                return Err(ParseError::new(token, base + position, "cycle length must be positive").into());
            }
            pairs.push((len, exp));
        }
        if pairs.is_empty() {
            return Err(ParseError::new(text, base, "empty cycle type").into());
        }
        let n: usize = pairs.iter().map(|&(l, a)| l * a as usize).sum();
        if n == 0 {
            return Err(ParseError::new(text, base, "cycle type of degree zero").into());
        }
        let mut counts = vec![0u32; n];
        for (l, a) in pairs {
            counts[l - 1] += a;
        }
        Self::new(counts)
    }
}

/// Exponent notation with zero counts omitted: `"1^2 2^1"`.
impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}^{}", i + 1, a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType({self})")
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub(crate) fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("degree must be at least 1".into()));
    }
    if n > cap || n > MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: "group enumeration",
            requested: n,
            cap: cap.min(MAX_DEGREE),
        });
    }
    Ok(())
}

/// All of `S_n` in lexicographic order of image arrays, with the default cap.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    enumerate_group_capped(n, DEFAULT_GROUP_CAP)
}

pub fn enumerate_group_capped(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    check_cap(n, cap)?;
    Ok(lex_permutations(n))
}

pub(crate) fn lex_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(factorial_usize(n));
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Permutation::from_raw(cur.clone()));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every cycle type of `S_n`, in lexicographic order of their count
/// vectors reversed so that `1^n` comes first.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    let mut types: Vec<CycleType> = crate::characters::partitions_of(n)
        .into_iter()
        .map(|p| CycleType::from_lengths(p.parts()).expect("partition is a valid type"))
        .collect();
    types.reverse();
    types
}

/// `K(a₁, …, a_n)`, sorted. Enumerated directly from the type, so it does
/// not need the whole group.
pub fn conjugacy_class(t: &CycleType) -> Result<Vec<Permutation>> {
    conjugacy_class_capped(t, DEFAULT_GROUP_CAP)
}

pub fn conjugacy_class_capped(t: &CycleType, cap: usize) -> Result<Vec<Permutation>> {
    let n = t.degree();
    check_cap(n, cap)?;
    let rep = t.representative();
    let mut set: BTreeSet<Permutation> = lex_permutations(n)
        .iter()
        .map(|g| rep.conjugate_by(g))
        .collect();
    if t.is_identity() {
        set.insert(Permutation::identity(n));
    }
    Ok(set.into_iter().collect())
}

pub fn class_size(t: &CycleType) -> BigUint {
    t.class_size()
}

/// `S_n(T)`: permutations fixing `{1..n} ∖ T` pointwise. Sorted.
pub fn young_subgroup(n: usize, support: &BTreeSet<usize>) -> Result<Vec<Permutation>> {
    check_support(n, support)?;
    let points: Vec<usize> = support.iter().copied().collect();
    let m = points.len();
    if m == 0 {
        return Ok(vec![Permutation::identity(n)]);
    }
    let mut out: Vec<Permutation> = lex_permutations(m)
        .iter()
        .map(|small| {
            let mut images: Vec<u8> = (0..n as u8).collect();
            for (j, &p) in points.iter().enumerate() {
                images[p - 1] = (points[small.images[j] as usize] - 1) as u8;
            }
            Permutation::from_raw(images)
        })
        .collect();
    out.sort();
    Ok(out)
}

fn check_support(n: usize, support: &BTreeSet<usize>) -> Result<()> {
    if let Some(&bad) = support.iter().find(|&&p| p == 0 || p > n) {
        return Err(Error::SupportViolation(format!("point {bad} is outside 1..={n}")));
    }
    Ok(())
}

/// A partition `T₁, …, T_l` (l ≥ 2) of `{1, …, n}`, blocks sorted by their
/// minimum.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundPartition {
    n: usize,
    blocks: Vec<BTreeSet<usize>>,
}

impl GroundPartition {
    pub fn new(n: usize, blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need at least two blocks, got {}",
                blocks.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &p in block {
                if p == 0 || p > n {
                    return Err(Error::InvalidPartition(format!("point {p} outside 1..={n}")));
                }
                if seen[p] {
                    return Err(Error::InvalidPartition(format!("point {p} appears twice")));
                }
                seen[p] = true;
            }
        }
        if let Some(missing) = (1..=n).find(|&p| !seen[p]) {
            return Err(Error::InvalidPartition(format!("point {missing} is not covered")));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| *b.iter().next().expect("non-empty"));
        Ok(Self { n, blocks })
    }

    /// `{1..k}`, `{k+1..n}`.
    pub fn split_at(n: usize, k: usize) -> Result<Self> {
        Self::new(n, vec![(1..=k).collect(), (k + 1..=n).collect()])
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    /// Whether the support of `p` is not inside any single block, i.e.
    /// `p ∈ T(T₁, …, T_l)`.
    pub fn separates(&self, p: &Permutation) -> bool {
        !self.blocks.iter().any(|b| p.moves_only(b))
    }

    /// Every partition of `{1..n}` into exactly two blocks.
    pub fn two_block_partitions(n: usize) -> Vec<Self> {
        if n < 2 {
            return Vec::new();
        }
        // the block containing 1 is {1} ∪ (a proper subset of 2..=n)
        (0u64..(1 << (n - 1)) - 1)
            .map(|mask| {
                let mut first = BTreeSet::from([1]);
                let mut second = BTreeSet::new();
                for p in 2..=n {
                    if mask >> (p - 2) & 1 == 1 {
                        first.insert(p);
                    } else {
                        second.insert(p);
                    }
                }
                Self::new(n, vec![first, second]).expect("two non-empty blocks")
            })
            .collect()
    }

    /// Parses `"{1}{2 3 4}"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Self::parse_at(n, text, 0)
    }

    pub(crate) fn parse_at(n: usize, text: &str, base: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut current: Option<BTreeSet<usize>> = None;
        let mut number = String::new();
        let mut start = 0;
        for (pos, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
            if ch.is_ascii_digit() {
                if number.is_empty() {
                    start = pos;
                }
                number.push(ch);
                continue;
            }
            if !number.is_empty() {
                let block = current.as_mut().ok_or_else(|| {
                    ParseError::new(number.clone(), base + start, "point outside a block")
                })?;
                let v = number.parse().map_err(|_| {
                    ParseError::new(number.clone(), base + start, "expected a point")
                })?;
                block.insert(v);
                number.clear();
            }
            match ch {
                '{' if current.is_none() => current = Some(BTreeSet::new()),
                '}' => {
                    let block = current.take().ok_or_else(|| {
                        ParseError::new("}", base + pos, "unbalanced brace")
                    })?;
                    blocks.push(block);
                }
                c if c.is_whitespace() || c == ',' => {}
                c => {
                    return Err(ParseError::new(c.to_string(), base + pos, "unexpected character").into())
                }
            }
        }
        if current.is_some() {
            return Err(ParseError::new(text, base + text.len(), "unterminated block").into());
        }
        Self::new(n, blocks)
    }
}

impl fmt::Display for GroundPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            let body: Vec<String> = block.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroundPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundPartition({self})")
    }
}

/// The right cosets `S_n(T)·αᵢ` of a pointwise stabiliser. Each
/// representative is the lexicographically smallest member of its coset;
/// representatives are sorted, so `α₁ = id`.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    n: usize,
    support: BTreeSet<usize>,
    representatives: Vec<Permutation>,
}

impl CosetSystem {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    /// Number of cosets, `n!/|T|!`.
    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    /// Canonical representative of `S_n(T)·σ`: the images of the points of
    /// `T` are rearranged into increasing order.
    pub fn canonical(&self, sigma: &Permutation) -> Permutation {
        let mut images = sigma.images().to_vec();
        let mut values: Vec<u8> = self.support.iter().map(|&p| images[p - 1]).collect();
        values.sort_unstable();
        for (&p, v) in self.support.iter().zip(values) {
            images[p - 1] = v;
        }
        Permutation::from_raw(images)
    }

    /// Index of the coset containing `sigma`.
    pub fn coset_of(&self, sigma: &Permutation) -> usize {
        let rep = self.canonical(sigma);
        self.representatives
            .binary_search(&rep)
            .expect("every permutation lies in some coset")
    }

    /// Members `τ · αᵢ`, τ ∈ S_n(T), sorted.
    pub fn members(&self, i: usize) -> Vec<Permutation> {
        let rep = &self.representatives[i];
        let mut out: Vec<Permutation> = young_subgroup(self.n, &self.support)
            .expect("support validated at construction")
            .iter()
            .map(|tau| tau.then(rep))
            .collect();
        out.sort();
        out
    }

    /// `(αᵢ(1), …, αᵢ(k))`; only meaningful when `T = {k+1, …, n}`.
    pub fn coset_vector(&self, i: usize, k: usize) -> Result<Vec<usize>> {
        let expected: BTreeSet<usize> = (k + 1..=self.n).collect();
        if k > self.n || self.support != expected {
            return Err(Error::SupportViolation(format!(
                "coset vectors of length {k} need T = {{{}..{}}}",
                k + 1,
                self.n
            )));
        }
        let rep = self
            .representatives
            .get(i)
            .ok_or_else(|| Error::InvalidParameters(format!("coset index {i} out of range")))?;
        Ok((1..=k).map(|p| rep.apply(p)).collect())
    }
}

pub fn right_cosets(n: usize, support: &BTreeSet<usize>) -> Result<CosetSystem> {
    right_cosets_capped(n, support, DEFAULT_GROUP_CAP)
}

pub fn right_cosets_capped(n: usize, support: &BTreeSet<usize>, cap: usize) -> Result<CosetSystem> {
    check_cap(n, cap)?;
    check_support(n, support)?;
    let mut system = CosetSystem {
        n,
        support: support.clone(),
        representatives: Vec::new(),
    };
    // Representatives: the image values on T are increasing, everything else
    // is free. Enumerate S_n and keep the canonical ones.
    let positions: Vec<usize> = support.iter().map(|&p| p - 1).collect();
    system.representatives = lex_permutations(n)
        .into_iter()
        .filter(|p| positions.windows(2).all(|w| p.images()[w[0]] < p.images()[w[1]]))
        .collect();
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    #[test]
    fn compose_reads_left_to_right() {
        let a = p(3, &[&[1, 2, 3]]);
        let b = p(3, &[&[2, 3]]);
        assert_eq!(a.compose(&b).unwrap(), p(3, &[&[1, 3]]));
        let t = p(4, &[&[1, 2]]);
        assert!(t.compose(&t).unwrap().is_identity());
        let s = p(4, &[&[1, 3, 4]]);
        assert_eq!(s.compose(&Permutation::identity(4)).unwrap(), s);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert_eq!(err, Err(Error::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(3, &[&[1, 2, 3]]).inverse(), p(3, &[&[1, 3, 2]]));
        assert!(Permutation::identity(5).inverse().is_identity());
        let inv = p(4, &[&[1, 4], &[2, 3]]);
        assert_eq!(inv.inverse(), inv);
    }

    #[test]
    fn conjugate_examples() {
        let a = p(3, &[&[1, 3]]);
        let g = p(3, &[&[1, 2]]);
        assert_eq!(a.conjugate(&g).unwrap(), p(3, &[&[2, 3]]));
        assert_eq!(a.conjugate(&Permutation::identity(3)).unwrap(), a);
        // g⁻¹·a·g written out with compose
        let explicit = g.inverse().compose(&a).unwrap().compose(&g).unwrap();
        assert_eq!(a.conjugate(&g).unwrap(), explicit);
    }

    #[test]
    fn cycle_decomposition_examples() {
        let x = Permutation::from_images(&[2, 1, 4, 3]).unwrap();
        assert_eq!(x.cycle_decomposition(), vec![vec![1, 2], vec![3, 4]]);
        assert!(Permutation::identity(4).cycle_decomposition().is_empty());
        let y = Permutation::from_images(&[3, 1, 2, 4]).unwrap();
        assert_eq!(y.cycle_decomposition(), vec![vec![1, 3, 2]]);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(4).cycle_type().counts(), &[4, 0, 0, 0]);
        assert_eq!(p(4, &[&[1, 2], &[3, 4]]).cycle_type().counts(), &[0, 2, 0, 0]);
        assert_eq!(p(5, &[&[1, 2, 3]]).cycle_type().counts(), &[2, 0, 1, 0, 0]);
    }

    #[test]
    fn move_set_examples() {
        assert!(Permutation::identity(4).move_set().is_empty());
        assert_eq!(
            p(5, &[&[1, 3], &[2, 5]]).move_set(),
            BTreeSet::from([1, 2, 3, 5])
        );
        assert_eq!(p(6, &[&[1, 2, 3]]).move_set(), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn enumerate_small_groups() {
        assert_eq!(enumerate_group(1).unwrap(), vec![Permutation::identity(1)]);
        let s3 = enumerate_group(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(s3[0].is_identity());
        assert_eq!(s3[5].one_line(), vec![3, 2, 1]);
        assert_eq!(enumerate_group(6).unwrap().len(), 720);
        for (i, g) in s3.iter().enumerate() {
            assert_eq!(g.rank(), i);
            assert_eq!(&Permutation::unrank(3, i), g);
        }
    }

    #[test]
    fn enumerate_rejects_above_cap() {
        match enumerate_group(9) {
            Err(Error::CapExceeded { cap, requested, .. }) => {
                assert_eq!((cap, requested), (8, 9));
            }
            other => panic!("expected cap error, got {other:?}"),
        }
        assert_eq!(enumerate_group_capped(9, 9).map(|g| g.len()), Ok(362880));
    }

    #[test]
    fn conjugacy_class_examples() {
        let t = CycleType::parse("1^2 2^1").unwrap();
        let class = conjugacy_class(&t).unwrap();
        assert_eq!(class.len(), 6);
        assert!(class.iter().all(|x| x.cycle_decomposition().len() == 1 && x.move_set().len() == 2));
        assert_eq!(class_size(&t), BigUint::from(6u32));
        let id = CycleType::identity(5);
        assert_eq!(conjugacy_class(&id).unwrap(), vec![Permutation::identity(5)]);
        assert_eq!(class_size(&id), BigUint::one());
    }

    #[test]
    fn invalid_cycle_types() {
        assert!(CycleType::new(vec![1, 1]).is_err());
        assert!(CycleType::new(vec![0, 1, 0]).is_err());
        assert!(CycleType::parse("").is_err());
        assert!(CycleType::parse("2^x").is_err());
    }

    #[test]
    fn cycle_type_text_round_trip() {
        let t = CycleType::parse("2^2 1^1").unwrap();
        assert_eq!(t.to_string(), "1^1 2^2");
        assert_eq!(t.degree(), 5);
        assert_eq!(CycleType::parse("3").unwrap(), CycleType::cycle(3, 3).unwrap());
    }

    #[test]
    fn young_subgroup_examples() {
        let s = young_subgroup(3, &BTreeSet::from([2, 3])).unwrap();
        assert_eq!(s, vec![Permutation::identity(3), p(3, &[&[2, 3]])]);
        assert_eq!(young_subgroup(4, &BTreeSet::new()).unwrap(), vec![Permutation::identity(4)]);
        assert_eq!(young_subgroup(5, &BTreeSet::from([1, 2, 3])).unwrap().len(), 6);
        assert!(young_subgroup(3, &BTreeSet::from([4])).is_err());
    }

    #[test]
    fn right_coset_examples() {
        let c = right_cosets(3, &BTreeSet::from([3])).unwrap();
        assert_eq!(c.index(), 6);
        let c = right_cosets(4, &BTreeSet::from([3, 4])).unwrap();
        assert_eq!(c.index(), 12);
        assert!(c.representatives()[0].is_identity());
        assert_eq!(c.coset_vector(0, 2).unwrap(), vec![1, 2]);
        assert!(c.coset_vector(0, 1).is_err());
    }

    #[test]
    fn coset_vectors_are_the_ordered_pairs() {
        let c = right_cosets(4, &BTreeSet::from([3, 4])).unwrap();
        let vectors: Vec<Vec<usize>> = (0..c.index()).map(|i| c.coset_vector(i, 2).unwrap()).collect();
        let mut pairs = Vec::new();
        for a in 1..=4 {
            for b in 1..=4 {
                if a != b {
                    pairs.push(vec![a, b]);
                }
            }
        }
        assert_eq!(vectors, pairs);
    }

    #[test]
    fn coset_membership_is_a_partition() {
        let support = BTreeSet::from([2, 4]);
        let c = right_cosets(4, &support).unwrap();
        let mut hits = vec![0usize; c.index()];
        for sigma in enumerate_group(4).unwrap() {
            let i = c.coset_of(&sigma);
            assert!(c.members(i).contains(&sigma));
            hits[i] += 1;
        }
        assert!(hits.iter().all(|&h| h == 2));
        for i in 0..c.index() {
            assert_eq!(c.members(i)[0], c.representatives()[i]);
        }
    }

    #[test]
    fn ground_partition_validation() {
        assert!(GroundPartition::parse(4, "{1}{2 3 4}").is_ok());
        assert!(GroundPartition::parse(4, "{1 2 3 4}").is_err());
        assert!(GroundPartition::parse(4, "{1}{2 3}").is_err());
        assert!(GroundPartition::parse(4, "{1 2}{2 3 4}").is_err());
        assert!(GroundPartition::parse(4, "{1}{}{2 3 4}").is_err());
        let gp = GroundPartition::parse(4, "{3 4} {1,2}").unwrap();
        assert_eq!(gp.to_string(), "{1 2}{3 4}");
        assert_eq!(GroundPartition::two_block_partitions(4).len(), 7);
    }

    #[test]
    fn parse_permutations() {
        assert_eq!(Permutation::parse("3 1 2", None).unwrap().one_line(), vec![3, 1, 2]);
        assert_eq!(
            Permutation::parse("(1 3 2)", Some(3)).unwrap(),
            Permutation::parse("3 1 2", None).unwrap()
        );
        assert!(Permutation::parse("()", Some(4)).unwrap().is_identity());
        assert!(Permutation::parse("1 1 2", None).is_err());
        assert!(Permutation::parse("(1 2", Some(3)).is_err());
        assert!(Permutation::parse("(1 2)", None).is_err());
        let e = Permutation::parse("2 x 1", None).unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { position: 2, .. })));
    }
}
