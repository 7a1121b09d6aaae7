//! Exact linear algebra on integer symmetric matrices: nullities over prime
//! fields, annihilating-polynomial checks on single vertices, and Krylov
//! minimal polynomials with integer-root splitting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::SymMatrix;

/// Primes below 2³¹ used for modular nullities.
pub const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Nullity of `A - shift·I` over `GF(p)`. Over the rationals the nullity is
/// at most this value.
pub fn nullity_mod_p(m: &SymMatrix, shift: i64, p: u64) -> usize {
    let n = m.dim();
    let reduce = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let mut a = vec![0u64; n * n];
    for i in 0..n {
        for &(j, v) in m.row(i) {
            a[i * n + j as usize] = reduce(v);
        }
        a[i * n + i] = (a[i * n + i] + reduce(-shift)) % p;
    }
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in col..n {
                a.swap(pivot * n + c, rank * n + c);
            }
        }
        let inv = pow_mod(a[rank * n + col], p - 2, p);
        for c in col..n {
            a[rank * n + c] = a[rank * n + c] * inv % p;
        }
        let (head, tail) = a.split_at_mut((rank + 1) * n);
        let pivot_row = &head[rank * n..];
        for row in tail.chunks_exact_mut(n) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = p - f;
            for c in col..n {
                row[c] = (row[c] + f * pivot_row[c]) % p;
            }
        }
        rank += 1;
    }
    n - rank
}

/// Whether `∏ (A - rᵢ·I)` kills the basis vector `e_v`.
pub fn annihilates(m: &SymMatrix, roots: &[i64], v: usize) -> bool {
    let mut x = vec![BigInt::zero(); m.dim()];
    x[v] = BigInt::one();
    for &r in roots {
        let ax = m.apply(&x);
        x = ax
            .into_iter()
            .zip(&x)
            .map(|(a, xi)| a - xi * r)
            .collect();
        if x.iter().all(Zero::is_zero) {
            return true;
        }
    }
    x.iter().all(Zero::is_zero)
}

/// Monic minimal polynomial of `A` relative to `e_v`, coefficients from the
/// constant term up. It divides the minimal polynomial of `A`.
pub fn krylov_minimal_polynomial(m: &SymMatrix, v: usize) -> Result<Vec<BigInt>> {
    struct Row {
        vec: Vec<BigInt>,
        pivot: usize,
        coeffs: Vec<BigInt>,
    }
    let n = m.dim();
    let mut krylov = vec![BigInt::zero(); n];
    krylov[v] = BigInt::one();
    let mut basis: Vec<Row> = Vec::new();
    for j in 0..=n {
        let mut w = krylov.clone();
        let mut coeffs = vec![BigInt::zero(); j + 1];
        coeffs[j] = BigInt::one();
        for row in &basis {
            let wp = &w[row.pivot];
            if wp.is_zero() {
                continue;
            }
            let g = row.vec[row.pivot].gcd(wp);
            let fw = &row.vec[row.pivot] / &g;
            let fb = wp / &g;
            for (x, y) in w.iter_mut().zip(&row.vec) {
                *x = &*x * &fw - y * &fb;
            }
            for (i, c) in coeffs.iter_mut().enumerate() {
                let other = row.coeffs.get(i).cloned().unwrap_or_default();
                *c = &*c * &fw - other * &fb;
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => {
                let lead = coeffs[j].clone();
                let mut monic = Vec::with_capacity(j + 1);
                for c in &coeffs {
                    let (q, r) = c.div_rem(&lead);
                    if !r.is_zero() {
                        return Err(Error::InvariantViolation(
                            "Krylov minimal polynomial is not integral".into(),
                        ));
                    }
                    monic.push(q);
                }
                return Ok(monic);
            }
            Some(pivot) => {
                let content = w
                    .iter()
                    .chain(&coeffs)
                    .fold(BigInt::zero(), |g, x| g.gcd(x));
                if !content.is_zero() && !content.is_one() {
                    w.iter_mut().for_each(|x| *x /= &content);
                    coeffs.iter_mut().for_each(|x| *x /= &content);
                }
                basis.push(Row {
                    vec: w,
                    pivot,
                    coeffs,
                });
            }
        }
        krylov = m.apply(&krylov);
    }
    Err(Error::InvariantViolation("Krylov sequence did not terminate".into()))
}

pub fn evaluate(poly: &[BigInt], x: i64) -> BigInt {
    poly.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides `poly` by `(x - root)`; the remainder must be zero.
fn deflate(poly: &[BigInt], root: i64) -> Vec<BigInt> {
    let d = poly.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (1..=d).rev() {
        carry = &poly[i] + carry * root;
        out[i - 1] = carry.clone();
    }
    out
}

/// Pulls every integer root in `[-bound, bound]` out of a squarefree
/// polynomial. Returns the roots (ascending) and the remaining factor.
pub fn split_integer_roots(poly: &[BigInt], bound: i64) -> (Vec<i64>, Vec<BigInt>) {
    let mut rest = poly.to_vec();
    let mut roots = Vec::new();
    for r in -bound..=bound {
        if rest.len() <= 1 {
            break;
        }
        while rest.len() > 1 && evaluate(&rest, r).is_zero() {
            rest = deflate(&rest, r);
            roots.push(r);
        }
    }
    (roots, rest)
}

pub fn format_polynomial(poly: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
        let var = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(format!("{sign} {coeff}{var}"));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let joined = terms.join(" ");
    joined.strip_prefix("+ ").map(str::to_string).unwrap_or(joined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn path_minimal_polynomial_has_irrational_part() {
        let m = Graph::path(3).to_matrix();
        // eigenvalues 0, ±√2: minimal polynomial x³ - 2x
        let mu = krylov_minimal_polynomial(&m, 0).unwrap();
        assert_eq!(mu, big(&[0, -2, 0, 1]));
        let (roots, rest) = split_integer_roots(&mu, m.row_sum_bound());
        assert_eq!(roots, vec![0]);
        assert_eq!(rest, big(&[-2, 0, 1]));
        assert_eq!(format_polynomial(&rest), "x^2 - 2");
    }

    #[test]
    fn nullities_of_a_cycle() {
        // 4-cycle: eigenvalues 2, 0, 0, -2
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let m = g.to_matrix();
        assert_eq!(nullity_mod_p(&m, 2, PRIMES[0]), 1);
        assert_eq!(nullity_mod_p(&m, 0, PRIMES[0]), 2);
        assert_eq!(nullity_mod_p(&m, -2, PRIMES[1]), 1);
        assert_eq!(nullity_mod_p(&m, 1, PRIMES[2]), 0);
        assert!(annihilates(&m, &[2, 0, -2], 0));
        assert!(!annihilates(&m, &[2, 0], 0));
    }

    #[test]
    fn deflation() {
        // (x - 1)(x + 2) = x² + x - 2
        let (roots, rest) = split_integer_roots(&big(&[-2, 1, 1]), 5);
        assert_eq!(roots, vec![-2, 1]);
        assert_eq!(rest, big(&[1]));
    }
}
