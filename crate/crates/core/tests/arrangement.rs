mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use spectra_core::arrangement::{
    arrangement_spectrum, build_arrangement, compare_quotient, equitable_quotient, integrality_scan,
    lift_eigenvalues, quotient_spectrum, scan_csv, unique_neighbor_quotient, verify_quotient_identity,
};
use spectra_core::cayley::build_cayley;
use spectra_core::genset::m_set;
use spectra_core::spectral::Verdict;
use spectra_core::{Budget, Permutation};

fn budget() -> Budget {
    Budget::default()
}

/// k-tuples of distinct values from 1..=n, sorted, by truncating permutations.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let set: BTreeSet<Vec<usize>> = common::all_perms(n)
        .into_iter()
        .map(|p| p[..k].iter().map(|x| x + 1).collect())
        .collect();
    set.into_iter().collect()
}

fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn dense_arrangement(n: usize, k: usize, r: usize) -> Vec<Vec<i64>> {
    let t = tuples(n, k);
    t.iter()
        .map(|a| t.iter().map(|b| i64::from(hamming(a, b) == r)).collect())
        .collect()
}

#[test]
fn construction_matches_hamming_definition() {
    for n in 2..=5 {
        for k in 1..=n {
            for r in 1..=k {
                let a = build_arrangement(n, k, r, &budget()).unwrap();
                let t = tuples(n, k);
                assert_eq!(a.vertex_count() as u64, common::factorial(n as u64) / common::factorial((n - k) as u64));
                for (i, ti) in t.iter().enumerate() {
                    assert_eq!(&a.tuple(i), ti);
                    for (j, tj) in t.iter().enumerate() {
                        assert_eq!(a.graph().has_edge(i, j), hamming(ti, tj) == r);
                    }
                }
            }
        }
    }
}

#[test]
fn degree_identity_for_single_position_changes() {
    for n in 2..=7usize {
        for k in 1..n {
            let m1 = m_set(n, k, 1).unwrap().len() as u64;
            let factor = common::factorial((n - k) as u64);
            assert_eq!(m1 % factor, 0);
            assert_eq!(m1 / factor, (k * (n - k)) as u64, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn complete_and_edgeless_spectra() {
    for n in 2..=6 {
        let a = build_arrangement(n, 1, 1, &budget()).unwrap();
        let map = arrangement_spectrum(&a, &budget()).unwrap().integer_map().unwrap();
        assert_eq!(map, BTreeMap::from([(n as i64 - 1, 1), (-1, n - 1)]));
    }
    for k in 1..=5 {
        let a = build_arrangement(k, k, 1, &budget()).unwrap();
        let map = arrangement_spectrum(&a, &budget()).unwrap().integer_map().unwrap();
        assert_eq!(map, BTreeMap::from([(0, common::factorial(k as u64) as usize)]));
    }
}

#[test]
fn single_change_graphs_are_integral_against_characteristic_polynomial() {
    for (n, k) in [(3, 2), (4, 2), (4, 3)] {
        let a = build_arrangement(n, k, 1, &budget()).unwrap();
        let map = arrangement_spectrum(&a, &budget()).unwrap().integer_map().unwrap();
        assert_eq!(Some(map), common::integer_spectrum(&dense_arrangement(n, k, 1)));
    }
}

#[test]
fn quotients_of_m_sets() {
    for n in 2..=5usize {
        for k in 1..n {
            for r in 1..=k {
                let q = equitable_quotient(n, k, r, &budget()).unwrap();
                let factor = common::factorial((n - k) as u64);
                assert!(q.entry_values().iter().all(|&v| v == 0 || v == factor));
                let m = m_set(n, k, r).unwrap().len() as u64;
                assert!(q.row_sums().iter().all(|&s| s == m));
                let id = verify_quotient_identity(n, k, r, &budget()).unwrap();
                assert!(id.holds, "({n},{k},{r}): {id}");
            }
        }
    }
}

#[test]
fn quotient_matches_arrangement_for_two_changes() {
    let q = equitable_quotient(4, 2, 2, &budget()).unwrap();
    assert_eq!(q.entry_values(), BTreeSet::from([0, 2]));
    let dense = dense_arrangement(4, 2, 2);
    for (i, row) in dense.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            assert_eq!(q.entries()[i][j], 2 * a as u64);
        }
    }
}

#[test]
fn quotient_identity_on_larger_instance() {
    assert!(verify_quotient_identity(5, 3, 2, &budget()).unwrap().holds);
}

#[test]
fn trivial_subgroup_gives_the_host_itself() {
    for r in 1..=3 {
        let q = equitable_quotient(3, 3, r, &budget()).unwrap();
        let host = build_cayley(&m_set(3, 3, r).unwrap(), &budget()).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(q.entries()[i][j], u64::from(host.graph().has_edge(i, j)));
            }
        }
        assert!(verify_quotient_identity(3, 3, r, &budget()).unwrap().holds);
    }
}

#[test]
fn eigenvalues_lift_into_the_host() {
    for n in 2..=5usize {
        for k in 1..n {
            for r in 1..=k {
                let report = lift_eigenvalues(n, k, r, &budget()).unwrap();
                assert!(report.partial.is_none());
                assert!(report.contained, "({n},{k},{r})");
                let top = report.entries.first().unwrap();
                assert_eq!(top.lifted, m_set(n, k, r).unwrap().len() as f64);
            }
        }
    }
    assert_eq!(lift_eigenvalues(3, 2, 1, &budget()).unwrap().factor, 1);
    assert_eq!(lift_eigenvalues(4, 2, 1, &budget()).unwrap().factor, 2);
}

#[test]
fn unique_neighbour_route_recovers_the_arrangement_graph() {
    for n in 3..=5 {
        for k in 2..n {
            let q = unique_neighbor_quotient(n, k, &budget()).unwrap();
            let a = build_arrangement(n, k, 1, &budget()).unwrap();
            assert!(compare_quotient(&q, &a, 1).holds);
            let via_quotient = quotient_spectrum(&q, &budget()).unwrap();
            assert_eq!(via_quotient.integer_map(), arrangement_spectrum(&a, &budget()).unwrap().integer_map());
            assert!(via_quotient.is_exact());
        }
    }
}

#[test]
fn unique_neighbour_property_by_direct_search() {
    for n in 3..=4usize {
        for k in 2..n {
            let q = unique_neighbor_quotient(n, k, &budget()).unwrap();
            let cosets = q.partition();
            let host = q.host().graph();
            for v in 0..host.vertex_count() {
                let beta_alpha = Permutation::unrank(n, v);
                let i = cosets.coset_of(&beta_alpha);
                for j in 0..cosets.index() {
                    let hits = cosets
                        .members(j)
                        .iter()
                        .filter(|m| host.has_edge(v, m.rank()))
                        .count();
                    let adjacent = hamming(&q.block_vector(i), &q.block_vector(j)) == 1;
                    assert_eq!(hits, usize::from(adjacent));
                }
            }
        }
    }
}

#[test]
fn scan_rows_and_csv() {
    let rows = integrality_scan(5, &budget());
    assert_eq!(rows.len(), (2..=5).map(|n| n * (n - 1) / 2).sum::<usize>());
    for row in &rows {
        if row.r == 1 {
            assert_eq!(row.verdict, Some(Verdict::Integral), "({},{},1)", row.n, row.k);
            assert!(row.exact);
        }
        assert!(row.verdict.is_some());
    }
    let cell = rows.iter().find(|r| (r.n, r.k, r.r) == (4, 3, 2)).unwrap();
    assert!(cell.exact);
    assert_eq!(cell.vertices, 24);
    let csv = scan_csv(&rows);
    let complete = csv.lines().find(|l| l.starts_with("4,1,1,")).unwrap();
    assert_eq!(complete, "4,1,1,4,3,yes,-1,3,yes,no");
    assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 10));
}

#[test]
fn scan_skips_out_of_budget_cells() {
    let tight = Budget {
        arrangement_vertices: 30,
        ..Budget::default()
    };
    let rows = integrality_scan(5, &tight);
    let big = rows.iter().find(|r| r.vertices > 30).unwrap();
    assert!(big.verdict.is_none());
    assert!(scan_csv(&rows).contains(",skipped,"));
}

#[test]
fn arrangement_parameter_errors() {
    assert!(build_arrangement(3, 4, 1, &budget()).is_err());
    assert!(build_arrangement(3, 2, 0, &budget()).is_err());
    assert!(build_arrangement(8, 6, 1, &budget()).is_err());
    assert_eq!(
        spectra_core::arrangement::m_count_closed_form(4, 2, 1).unwrap(),
        BigUint::from(8u32)
    );
}
