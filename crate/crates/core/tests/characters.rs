mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use spectra_core::characters::{
    character_table, character_value, normal_cayley_spectrum, partitions_of, spectrum_from_classes,
    IntegerPartition,
};
use spectra_core::genset::{class_union, cy, GeneratingSet};
use spectra_core::perm::{class_size, cycle_types};
use spectra_core::{CycleType, Error, Permutation};

#[test]
fn partition_counts_match_pentagonal_recurrence() {
    for n in 1..=14 {
        assert_eq!(partitions_of(n).len() as u64, common::partition_count(n), "n = {n}");
    }
    assert_eq!(partitions_of(8).len(), 22);
}

#[test]
fn partitions_come_in_reverse_lexicographic_order() {
    let parts: Vec<Vec<usize>> = partitions_of(6).iter().map(|p| p.parts().to_vec()).collect();
    let mut sorted = parts.clone();
    sorted.sort();
    sorted.reverse();
    assert_eq!(parts, sorted);
    assert_eq!(parts[0], vec![6]);
    assert_eq!(parts.last().unwrap(), &vec![1; 6]);
}

#[test]
fn dimensions_match_hook_lengths() {
    for n in 1..=10 {
        let table = character_table(n).unwrap();
        for (lambda, dim) in table.partitions().iter().zip(table.dims()) {
            assert_eq!(dim as u128, common::hook_dimension(lambda.parts()), "{lambda}");
        }
    }
}

#[test]
fn trivial_sign_and_conjugate_characters() {
    for n in 2..=7 {
        let trivial = IntegerPartition::new(vec![n]).unwrap();
        let sign = IntegerPartition::new(vec![1; n]).unwrap();
        let transposition = CycleType::cycle(n, 2).unwrap();
        assert_eq!(character_value(&sign, &transposition).unwrap(), -1);
        for mu in cycle_types(n) {
            assert_eq!(character_value(&trivial, &mu).unwrap(), 1);
            let parity = if (n - mu.lengths().len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(character_value(&sign, &mu).unwrap(), parity);
            // χ_λ' = sign ⊗ χ_λ
            for lambda in partitions_of(n) {
                assert_eq!(
                    character_value(&lambda.conjugate(), &mu).unwrap(),
                    parity * character_value(&lambda, &mu).unwrap()
                );
            }
        }
    }
}

#[test]
fn orthogonality_through_degree_eight() {
    for n in 1..=8 {
        let table = character_table(n).unwrap();
        table.check_orthogonality().unwrap();
        // independent recomputation of the row relations
        let sizes: Vec<BigInt> = table.classes().iter().map(|t| BigInt::from(class_size(t))).collect();
        let order = BigInt::from(common::factorial(n as u64));
        for a in table.values() {
            for b in table.values() {
                let s: BigInt = a.iter().zip(b).zip(&sizes).map(|((x, y), k)| k * x * y).sum();
                let expected = if a == b { order.clone() } else { BigInt::from(0) };
                assert_eq!(s, expected);
            }
        }
        let dims: i128 = table.dims().iter().map(|&d| (d as i128) * (d as i128)).sum();
        assert_eq!(dims, common::factorial(n as u64) as i128);
    }
}

#[test]
fn degree_two_table() {
    let table = character_table(2).unwrap();
    assert_eq!(table.values(), &[vec![1, 1], vec![1, -1]]);
}

#[test]
fn degree_eight_table_is_fast() {
    let start = Instant::now();
    let table = character_table(8).unwrap();
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert_eq!(table.values().len(), 22);
}

#[test]
fn mismatched_sizes_are_rejected() {
    let lambda = IntegerPartition::new(vec![2, 1]).unwrap();
    assert!(character_value(&lambda, &CycleType::identity(4)).is_err());
}

fn oracle_for(s: &GeneratingSet) -> BTreeMap<i64, usize> {
    let n = s.degree();
    let gens: Vec<Vec<usize>> = s
        .elements()
        .iter()
        .map(|p| p.images().iter().map(|&x| x as usize).collect())
        .collect();
    common::integer_spectrum(&common::cayley_dense(n, &gens)).expect("integral")
}

#[test]
fn normal_spectra_match_characteristic_polynomial() {
    for n in 3..=4 {
        let types: Vec<CycleType> = cycle_types(n).into_iter().filter(|t| !t.is_identity()).collect();
        for t in &types {
            let s = class_union(n, std::slice::from_ref(t)).unwrap();
            let spectrum = normal_cayley_spectrum(&s).unwrap();
            assert_eq!(spectrum.integer_map().unwrap(), oracle_for(&s), "{t}");
            assert_eq!(spectrum.total(), common::factorial(n as u64) as usize);
        }
    }
}

#[test]
fn complete_bipartite_from_transpositions_of_s3() {
    let s = class_union(3, &[CycleType::parse("1^1 2^1").unwrap()]).unwrap();
    assert_eq!(normal_cayley_spectrum(&s).unwrap().to_string(), "{3:1, 0:4, -3:1}");
}

#[test]
fn multiplicities_are_squares_of_dimensions() {
    let n = 5;
    let table = character_table(n).unwrap();
    let t = CycleType::parse("2^1 3^1").unwrap();
    let counts: BTreeMap<CycleType, BigInt> = [(t.clone(), BigInt::from(class_size(&t)))].into();
    let spectrum = spectrum_from_classes(n, &counts).unwrap();
    let dims: Vec<i64> = table.dims();
    let col = table.class_index(&t).unwrap();
    let size = class_size(&t);
    let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
    for (row, d) in table.values().iter().zip(dims) {
        let eta = BigInt::from(size.clone()) * row[col] / d;
        let eta: i64 = eta.try_into().unwrap();
        *expected.entry(eta).or_default() += (d * d) as usize;
    }
    assert_eq!(spectrum.integer_map().unwrap(), expected);
}

#[test]
fn non_normal_sets_are_refused() {
    let s = cy(4, 2).unwrap();
    assert!(matches!(normal_cayley_spectrum(&s), Err(Error::NotNormal)));
    let t = GeneratingSet::custom(3, [Permutation::identity(3)]).unwrap();
    assert!(normal_cayley_spectrum(&t).is_err());
}
