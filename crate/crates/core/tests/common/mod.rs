//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's spectral or character code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// All permutations of `0..n` as one-line arrays, in lexicographic order,
/// generated by Heap-free recursion.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Dense adjacency of the Cayley graph with edges `u ~ s∘u` where `s` acts
/// first: `(s·u)(x) = u(s(x))`. Generators are 0-based one-line arrays.
pub fn cayley_dense(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let verts = all_perms(n);
    let index: HashMap<Vec<usize>, usize> = verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut a = vec![vec![0i64; verts.len()]; verts.len()];
    for (i, u) in verts.iter().enumerate() {
        for s in gens {
            let su: Vec<usize> = (0..n).map(|x| u[s[x]]).collect();
            a[i][index[&su]] += 1;
        }
    }
    a
}

/// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier, constant
/// term first.
pub fn char_poly(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let am: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for (l, ail) in am[i].iter().enumerate() {
                if ail.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !m[l][j].is_zero() {
                        next[i][j] += ail * &m[l][j];
                    }
                }
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        // c_{n-k} = -tr(A·M_k)/k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for (l, ail) in am[i].iter().enumerate() {
                if !ail.is_zero() {
                    tr += ail * &m[l][i];
                }
            }
        }
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    coeffs
}

/// Integer eigenvalues with multiplicities read off the characteristic
/// polynomial; `None` if some root is not an integer.
pub fn integer_spectrum(a: &[Vec<i64>]) -> Option<BTreeMap<i64, usize>> {
    let mut poly = char_poly(a);
    let bound = a.iter().map(|r| r.iter().map(|x| x.abs()).sum::<i64>()).max().unwrap_or(0);
    let mut out = BTreeMap::new();
    for r in -bound..=bound {
        loop {
            if poly.len() <= 1 {
                break;
            }
            let value = poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * r + c);
            if !value.is_zero() {
                break;
            }
            let d = poly.len() - 1;
            let mut q = vec![BigInt::zero(); d];
            let mut carry = BigInt::zero();
            for i in (1..=d).rev() {
                carry = &poly[i] + carry * r;
                q[i - 1] = carry.clone();
            }
            poly = q;
            *out.entry(r).or_insert(0) += 1;
        }
    }
    (poly.len() == 1).then_some(out)
}

/// Euler's pentagonal-number recurrence for the partition function.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                total += sign * p[m - g2];
            }
            k += 1;
        }
        p[m] = total;
    }
    p[n] as u64
}

/// Dimension of the irreducible indexed by `parts` via the hook-length
/// formula.
pub fn hook_dimension(parts: &[usize]) -> u128 {
    let n: usize = parts.iter().sum();
    let conj: Vec<usize> = (0..parts.first().copied().unwrap_or(0))
        .map(|j| parts.iter().filter(|&&p| p > j).count())
        .collect();
    let mut hooks: u128 = 1;
    for (i, &p) in parts.iter().enumerate() {
        for j in 0..p {
            hooks *= (p - j - 1 + conj[j] - i - 1 + 1) as u128;
        }
    }
    (1..=n as u128).product::<u128>() / hooks
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
