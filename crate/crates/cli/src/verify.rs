//! The verification suite behind `spectra verify`: every family of
//! integrality and quotient statements instantiated at desk scale, with one
//! PASS/FAIL record per instance.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use spectra_core::arrangement::{
    arrangement_spectrum, build_arrangement, compare_quotient, lift_eigenvalues, unique_neighbor_quotient,
    verify_quotient_identity,
};
use spectra_core::cayley::{build_cayley, commuting_combination_check};
use spectra_core::characters::normal_cayley_spectrum;
use spectra_core::genset::{class_union, cy, decompose, nicely_separated};
use spectra_core::perm::{cycle_types, enumerate_group};
use spectra_core::spectral::{ExactOutcome, Verdict};
use spectra_core::{Budget, GroundPartition, Result};

use crate::Artifact;

struct Suite {
    results: Vec<Value>,
    failures: usize,
}

impl Suite {
    fn record(&mut self, check: &str, instance: String, outcome: Result<std::result::Result<(), String>>) {
        let (status, detail) = match outcome {
            Ok(Ok(())) => ("PASS", None),
            Ok(Err(counterexample)) => ("FAIL", Some(counterexample)),
            Err(e) => ("FAIL", Some(format!("error: {e}"))),
        };
        if status == "FAIL" {
            self.failures += 1;
        }
        let mut entry = json!({"check": check, "instance": instance, "status": status});
        if let Some(d) = detail {
            entry["counterexample"] = json!(d);
        }
        self.results.push(entry);
    }
}

fn exact_map(m: &spectra_core::graph::SymMatrix, budget: &Budget) -> Result<std::result::Result<BTreeMap<i64, usize>, String>> {
    Ok(match spectra_core::spectral::spectrum_exact(m, budget)? {
        ExactOutcome::Spectrum(s) => Ok(s.integer_map().expect("exact")),
        ExactOutcome::NonIntegral(c) => Err(c.to_string()),
    })
}

fn integral(verdict: Verdict, exact: bool, note: Option<&String>) -> std::result::Result<(), String> {
    if verdict == Verdict::Integral && exact {
        Ok(())
    } else {
        Err(format!("verdict {verdict} (exact = {exact}){}", note.map(|n| format!(": {n}")).unwrap_or_default()))
    }
}

/// Runs the suite for degrees up to `max_n` (at most 6). The heavier
/// families (lifting, nicely separated sweeps, character comparisons) stop
/// at degree 5.
pub fn run_verify(max_n: usize, seed: u64, budget: &Budget) -> Artifact {
    let mut suite = Suite {
        results: Vec::new(),
        failures: 0,
    };
    let small = max_n.min(5);

    for n in 3..=small {
        for t in cycle_types(n).into_iter().filter(|t| !t.is_identity()) {
            let outcome = (|| {
                let s = class_union(n, std::slice::from_ref(&t))?;
                let by_characters = normal_cayley_spectrum(&s)?.integer_map().expect("exact");
                let g = build_cayley(&s, budget)?;
                Ok(exact_map(&g.matrix(), budget)?.and_then(|m| {
                    (m == by_characters)
                        .then_some(())
                        .ok_or_else(|| format!("characters give {by_characters:?}, linear algebra gives {m:?}"))
                }))
            })();
            suite.record("character formula matches exact spectrum", format!("n={n} class={t}"), outcome);
        }
    }

    for n in 3..=max_n {
        for r in 2..=n {
            let outcome = (|| {
                let g = build_cayley(&cy(n, r)?, budget)?;
                let report = g.verify_integrality(budget);
                Ok(integral(report.verdict, report.exact, report.note.as_ref()))
            })();
            suite.record("r-cycles through 1 give an integral Cayley graph", format!("n={n} r={r}"), outcome);
        }
    }

    if max_n >= 3 {
        let outcome = (|| {
            let g = build_cayley(&cy(3, 2)?, budget)?;
            Ok(exact_map(&g.matrix(), budget)?.and_then(|m| match m.get(&0) {
                None => Ok(()),
                Some(mult) => Err(format!("0 has multiplicity {mult}")),
            }))
        })();
        suite.record("zero is not an eigenvalue of the transpositions through 1", "n=3".into(), outcome);
    }
    for n in 4..=small {
        let outcome = (|| {
            let g = build_cayley(&cy(n, 2)?, budget)?;
            Ok(exact_map(&g.matrix(), budget)?.and_then(|m| {
                let binom = |a: usize, b: usize| -> usize { (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1)) };
                for l in 1..n {
                    let need = binom(n - 2, l - 1);
                    for v in [(n - l) as i64, -((n - l) as i64)] {
                        let got = m.get(&v).copied().unwrap_or(0);
                        if got < need {
                            return Err(format!("eigenvalue {v} has multiplicity {got} < {need}"));
                        }
                    }
                }
                let need = binom(n - 1, 2);
                let got = m.get(&0).copied().unwrap_or(0);
                if got < need {
                    return Err(format!("eigenvalue 0 has multiplicity {got} < {need}"));
                }
                Ok(())
            }))
        })();
        suite.record("transpositions through 1 meet the multiplicity lower bounds", format!("n={n}"), outcome);
    }

    for n in 3..=small {
        for p in GroundPartition::two_block_partitions(n) {
            for t in cycle_types(n).into_iter().filter(|t| !t.is_identity()) {
                let outcome = (|| {
                    let s = nicely_separated(n, std::slice::from_ref(&t), &p)?;
                    let report = build_cayley(&s, budget)?.verify_integrality(budget);
                    if let Err(e) = integral(report.verdict, report.exact, report.note.as_ref()) {
                        return Ok(Err(e));
                    }
                    let d = decompose(&s)?;
                    if &d.reconstruct() != s.elements() {
                        return Ok(Err("S differs from S0 minus the union of its parts".into()));
                    }
                    if d.parts.is_empty() {
                        return Ok(Ok(()));
                    }
                    let combo = commuting_combination_check(&d.whole, &d.parts_union(), budget)?;
                    Ok(combo.passed().then_some(()).ok_or_else(|| combo.to_string()))
                })();
                suite.record(
                    "nicely separated single-class sets are integral and decompose",
                    format!("n={n} class={t} partition={p}"),
                    outcome,
                );
            }
        }
    }

    for n in 2..=max_n {
        for k in 1..n {
            let outcome = (|| {
                let a = build_arrangement(n, k, 1, budget)?;
                let report = spectra_core::spectral::verify_integrality(&a.matrix(), budget);
                Ok(integral(report.verdict, report.exact, report.note.as_ref()))
            })();
            suite.record("single-change arrangement graphs are integral", format!("n={n} k={k}"), outcome);
        }
        let outcome = (|| {
            let a = build_arrangement(n, 1, 1, budget)?;
            let m = arrangement_spectrum(&a, budget)?.integer_map();
            let expected = BTreeMap::from([(n as i64 - 1, 1), (-1, n - 1)]);
            Ok((m.as_ref() == Some(&expected)).then_some(()).ok_or_else(|| format!("got {m:?}")))
        })();
        suite.record("single-coordinate arrangement graph is complete", format!("n={n}"), outcome);
        let outcome = (|| {
            let a = build_arrangement(n, n, 1, budget)?;
            let m = arrangement_spectrum(&a, budget)?.integer_map();
            let expected = BTreeMap::from([(0, a.vertex_count())]);
            Ok((m.as_ref() == Some(&expected)).then_some(()).ok_or_else(|| format!("got {m:?}")))
        })();
        suite.record("full-length single-change arrangement graph is edgeless", format!("k={n}"), outcome);
    }

    for n in 2..=max_n {
        for k in 1..n {
            for r in 1..=k {
                let outcome = verify_quotient_identity(n, k, r, budget)
                    .map(|id| id.holds.then_some(()).ok_or_else(|| id.to_string()));
                suite.record(
                    "coset partition is equitable with quotient (n-k)! times the arrangement adjacency",
                    format!("n={n} k={k} r={r}"),
                    outcome,
                );
            }
        }
    }

    for n in 2..=small {
        for k in 1..n {
            for r in 1..=k {
                let outcome = lift_eigenvalues(n, k, r, budget).map(|rep| {
                    if let Some(p) = rep.partial {
                        return Err(p);
                    }
                    match rep.entries.iter().find(|e| e.host_multiplicity < e.multiplicity) {
                        None => Ok(()),
                        Some(e) => Err(format!(
                            "eigenvalue {} (multiplicity {}) lifts to {} with multiplicity {}",
                            e.eigenvalue, e.multiplicity, e.lifted, e.host_multiplicity
                        )),
                    }
                });
                suite.record("arrangement eigenvalues lift into the Cayley host", format!("n={n} k={k} r={r}"), outcome);
            }
        }
    }

    for n in 3..=small {
        for k in 2..n {
            let outcome = (|| {
                let q = unique_neighbor_quotient(n, k, budget)?;
                let a = build_arrangement(n, k, 1, budget)?;
                let id = compare_quotient(&q, &a, 1);
                Ok(id.holds.then_some(()).ok_or_else(|| id.to_string()))
            })();
            suite.record("unique-neighbour quotient equals the arrangement graph", format!("n={n} k={k}"), outcome);
        }
    }

    let outcome = (|| {
        let group = enumerate_group(max_n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let a = &group[rng.gen_range(0..group.len())];
            let g = &group[rng.gen_range(0..group.len())];
            let c = a.conjugate(g)?;
            if c.cycle_type() != a.cycle_type() {
                return Ok(Err(format!("{} conjugated by {} is {}", a.cycle_notation(), g.cycle_notation(), c.cycle_notation())));
            }
        }
        Ok(Ok(()))
    })();
    suite.record("conjugation preserves cycle type (random sample)", format!("n={max_n} samples=200"), outcome);

    let total = suite.results.len();
    let report = json!({
        "suite": "desk-scale verification",
        "max_n": max_n,
        "seed": seed,
        "summary": {"instances": total, "pass": total - suite.failures, "fail": suite.failures},
        "results": suite.results,
    });
    let mut content = serde_json::to_string_pretty(&report).expect("serializable");
    content.push('\n');
    Artifact {
        content,
        exit_code: if suite.failures == 0 { 0 } else { 1 },
    }
}
