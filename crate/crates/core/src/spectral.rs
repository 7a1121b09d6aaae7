//! Numeric and exact spectra of integer symmetric matrices.
//!
//! The exact path starts from numerically rounded candidates and proves
//! them: `∏ (A - m·I)` must kill one vertex per symmetry orbit (so every
//! eigenvalue is a candidate), multiplicities are nullities over a prime
//! field (upper bounds for the rational nullities that must add up to the
//! dimension), and the first three power traces must match. When the
//! candidates fail, the Krylov minimal polynomial of the failing vertex
//! either supplies missing integer roots or exhibits a factor with no
//! integer root, which is a proof of non-integrality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{
    annihilates, format_polynomial, krylov_minimal_polynomial, nullity_mod_p, split_integer_roots,
    PRIMES,
};
use crate::graph::SymMatrix;
use crate::spectrum::{Spectrum, AGGREGATION_TOLERANCE, INTEGRALITY_SCREEN};
use crate::Budget;

pub fn numeric_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    if m.dim() == 0 {
        return Vec::new();
    }
    m.to_dense().symmetric_eigenvalues().iter().copied().collect()
}

pub fn spectrum_numeric(m: &SymMatrix, budget: &Budget) -> Result<Spectrum> {
    if m.dim() > budget.numeric_vertices {
        return Err(Error::BudgetExceeded {
            what: "dense eigensolve",
            vertices: m.dim(),
            budget: budget.numeric_vertices,
            hint: "use the character formula for normal sets or the disjoint-union reduction",
        });
    }
    Ok(Spectrum::from_numeric(numeric_eigenvalues(m), AGGREGATION_TOLERANCE))
}

/// Exact evidence that some eigenvalue is not an integer: the minimal
/// polynomial of the matrix relative to `e_vertex` keeps a factor of
/// positive degree after all integer roots are divided out.
#[derive(Clone, Debug, PartialEq)]
pub struct NonIntegralityCertificate {
    pub vertex: usize,
    pub minimal_polynomial: Vec<BigInt>,
    pub integer_roots: Vec<i64>,
    pub residual: Vec<BigInt>,
    /// Numeric eigenvalue farthest from an integer, when one was computed.
    pub numeric_witness: Option<f64>,
}

impl fmt::Display for NonIntegralityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "minimal polynomial at vertex {} has the factor {} with no integer root",
            self.vertex,
            format_polynomial(&self.residual)
        )?;
        if let Some(w) = self.numeric_witness {
            write!(f, " (numeric eigenvalue {w:.10})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExactOutcome {
    Spectrum(Spectrum),
    NonIntegral(NonIntegralityCertificate),
}

impl ExactOutcome {
    pub fn spectrum(&self) -> Option<&Spectrum> {
        match self {
            ExactOutcome::Spectrum(s) => Some(s),
            ExactOutcome::NonIntegral(_) => None,
        }
    }
}

pub fn spectrum_exact(m: &SymMatrix, budget: &Budget) -> Result<ExactOutcome> {
    let n = m.dim();
    if n > budget.exact_vertices {
        return Err(Error::BudgetExceeded {
            what: "exact spectrum",
            vertices: n,
            budget: budget.exact_vertices,
            hint: "raise the exact budget or use the numeric screen",
        });
    }
    if n == 0 {
        return Ok(ExactOutcome::Spectrum(Spectrum::from_exact(BTreeMap::new())));
    }
    let numeric = numeric_eigenvalues(m);
    let witness = numeric
        .iter()
        .copied()
        .max_by(|a, b| (a - a.round()).abs().total_cmp(&(b - b.round()).abs()))
        .filter(|w| (w - w.round()).abs() > INTEGRALITY_SCREEN);
    let mut candidates: BTreeSet<i64> = numeric.iter().map(|v| v.round() as i64).collect();

    let bound = m.row_sum_bound();
    for v in m.orbit_representatives() {
        let roots: Vec<i64> = candidates.iter().copied().collect();
        if annihilates(m, &roots, v) {
            continue;
        }
        let mu = krylov_minimal_polynomial(m, v)?;
        let (integer_roots, residual) = split_integer_roots(&mu, bound);
        if residual.len() > 1 {
            return Ok(ExactOutcome::NonIntegral(NonIntegralityCertificate {
                vertex: v,
                minimal_polynomial: mu,
                integer_roots,
                residual,
                numeric_witness: witness,
            }));
        }
        candidates.extend(integer_roots);
    }

    // Every eigenvalue is now known to be a candidate.
    let candidates: Vec<i64> = candidates.into_iter().collect();
    let mut best: Vec<usize> = vec![usize::MAX; candidates.len()];
    let mut multiplicities = None;
    for p in PRIMES {
        let nullities: Vec<usize> = candidates
            .par_iter()
            .map(|&c| nullity_mod_p(m, c, p))
            .collect();
        for (b, x) in best.iter_mut().zip(nullities) {
            *b = (*b).min(x);
        }
        let total: usize = best.iter().sum();
        if total == n {
            multiplicities = Some(best.clone());
            break;
        }
        if total < n {
            return Err(Error::InvariantViolation(format!(
                "modular nullities sum to {total} < {n} although every eigenvalue is a candidate"
            )));
        }
    }
    let multiplicities = multiplicities.ok_or_else(|| {
        Error::InvariantViolation("modular nullities did not settle on any prime".into())
    })?;

    let map: BTreeMap<i64, usize> = candidates.into_iter().zip(multiplicities).collect();
    let spectrum = Spectrum::from_exact(map);
    for p in 1..=3 {
        let expected = m.trace_power(p);
        let got = spectrum.moment(p).expect("exact spectrum");
        if expected != got {
            return Err(Error::InvariantViolation(format!(
                "trace of A^{p} is {expected} but the spectrum gives {got}"
            )));
        }
    }
    Ok(ExactOutcome::Spectrum(spectrum))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Integral,
    NonIntegral,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Integral => "integral",
            Verdict::NonIntegral => "non_integral",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug)]
pub struct IntegralityReport {
    pub verdict: Verdict,
    /// Whether the verdict rests on exact arithmetic.
    pub exact: bool,
    pub spectrum: Option<Spectrum>,
    pub certificate: Option<NonIntegralityCertificate>,
    /// `max |λ - round(λ)|` over the numeric spectrum, when one was computed.
    pub max_deviation: Option<f64>,
    pub note: Option<String>,
}

/// Exact verdict within the exact budget; within the numeric budget only
/// `integral` (numeric screen, `exact = false`) or `undecided`. A
/// `non_integral` verdict always carries an exact certificate.
pub fn verify_integrality(m: &SymMatrix, budget: &Budget) -> IntegralityReport {
    if m.dim() <= budget.exact_vertices {
        match spectrum_exact(m, budget) {
            Ok(ExactOutcome::Spectrum(s)) => {
                return IntegralityReport {
                    verdict: Verdict::Integral,
                    exact: true,
                    max_deviation: Some(0.0),
                    spectrum: Some(s),
                    certificate: None,
                    note: None,
                }
            }
            Ok(ExactOutcome::NonIntegral(cert)) => {
                let dev = cert.numeric_witness.map(|w| (w - w.round()).abs());
                return IntegralityReport {
                    verdict: Verdict::NonIntegral,
                    exact: true,
                    spectrum: None,
                    certificate: Some(cert),
                    max_deviation: dev,
                    note: None,
                };
            }
            Err(e) => {
                return IntegralityReport {
                    verdict: Verdict::Undecided,
                    exact: false,
                    spectrum: None,
                    certificate: None,
                    max_deviation: None,
                    note: Some(e.to_string()),
                }
            }
        }
    }
    match spectrum_numeric(m, budget) {
        Ok(s) => {
            let dev = s.max_integer_deviation();
            let verdict = if dev <= INTEGRALITY_SCREEN {
                Verdict::Integral
            } else {
                Verdict::Undecided
            };
            IntegralityReport {
                verdict,
                exact: false,
                spectrum: Some(s),
                certificate: None,
                max_deviation: Some(dev),
                note: Some("numeric screen only; above the exact budget".into()),
            }
        }
        Err(e) => IntegralityReport {
            verdict: Verdict::Undecided,
            exact: false,
            spectrum: None,
            certificate: None,
            max_deviation: None,
            note: Some(e.to_string()),
        },
    }
}
