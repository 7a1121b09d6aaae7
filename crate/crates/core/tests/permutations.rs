mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectra_core::perm::{
    class_size, conjugacy_class, cycle_types, enumerate_group, factorial, right_cosets, young_subgroup,
};
use spectra_core::{CycleType, Permutation};

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

#[test]
fn composition_is_associative_on_s4() {
    let g = enumerate_group(4).unwrap();
    for a in &g {
        for b in &g {
            let ab = a.compose(b).unwrap();
            for c in &g {
                assert_eq!(ab.compose(c).unwrap(), a.compose(&b.compose(c).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn composition_applies_left_factor_first() {
    // independent reading of one-line arrays
    let g = enumerate_group(4).unwrap();
    for a in &g {
        for b in &g {
            let ab = a.compose(b).unwrap();
            for i in 1..=4 {
                assert_eq!(ab.apply(i), b.apply(a.apply(i)));
            }
        }
    }
}

#[test]
fn conjugation_preserves_cycle_type_on_s5() {
    let g = enumerate_group(5).unwrap();
    for a in &g {
        for h in &g {
            assert_eq!(a.conjugate(h).unwrap().cycle_type(), a.cycle_type());
        }
    }
}

#[test]
fn random_conjugations_in_s6_preserve_type() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let g = enumerate_group(6).unwrap();
    for _ in 0..1000 {
        let a = &g[rng.gen_range(0..g.len())];
        let h = &g[rng.gen_range(0..g.len())];
        let c = a.conjugate(h).unwrap();
        let lengths = |p: &Permutation| {
            let mut l: Vec<usize> = p.cycle_decomposition().iter().map(Vec::len).collect();
            l.sort_unstable();
            l
        };
        assert_eq!(lengths(&c), lengths(a));
    }
}

#[test]
fn conjugating_a_cycle_relabels_its_entries() {
    // g⁻¹ (c₁ … c_l) g = (g(c₁) … g(c_l)) for every cycle and every g in S_5
    let n = 5;
    let g = enumerate_group(n).unwrap();
    for a in g.iter().filter(|p| p.cycle_decomposition().len() == 1) {
        let cycle = &a.cycle_decomposition()[0];
        for h in &g {
            let relabelled: Vec<usize> = cycle.iter().map(|&c| h.apply(c)).collect();
            let expected = Permutation::from_cycles(n, &[relabelled]).unwrap();
            assert_eq!(a.conjugate(h).unwrap(), expected);
            assert_eq!(h.inverse().compose(a).unwrap().compose(h).unwrap(), expected);
        }
    }
}

#[test]
fn classes_are_conjugation_orbits_on_s5() {
    let g = enumerate_group(5).unwrap();
    for t in cycle_types(5) {
        let u = t.representative();
        let orbit: BTreeSet<Permutation> = g.iter().map(|h| u.conjugate(h).unwrap()).collect();
        let class: BTreeSet<Permutation> = conjugacy_class(&t).unwrap().into_iter().collect();
        assert_eq!(orbit, class, "type {t}");
    }
}

#[test]
fn class_sizes_match_enumeration_on_s5() {
    let mut by_type: BTreeMap<CycleType, u64> = BTreeMap::new();
    for p in enumerate_group(5).unwrap() {
        *by_type.entry(p.cycle_type()).or_default() += 1;
    }
    assert_eq!(by_type.len(), 7);
    for (t, count) in by_type {
        assert_eq!(class_size(&t), BigUint::from(count));
        assert_eq!(conjugacy_class(&t).unwrap().len() as u64, count);
    }
}

#[test]
fn class_sizes_sum_to_group_order() {
    for n in 1..=8 {
        let total: BigUint = cycle_types(n).iter().map(class_size).sum();
        assert_eq!(total, factorial(n), "n = {n}");
        assert_eq!(cycle_types(n).len() as u64, common::partition_count(n));
    }
}

#[test]
fn cycle_decomposition_recomposes_on_s5() {
    for p in enumerate_group(5).unwrap() {
        let rebuilt = p
            .cycle_decomposition()
            .into_iter()
            .map(|c| Permutation::from_cycles(5, &[c]).unwrap())
            .fold(Permutation::identity(5), |acc, c| acc.compose(&c).unwrap());
        assert_eq!(rebuilt, p);
        for c in p.cycle_decomposition() {
            assert!(c.len() >= 2);
            assert_eq!(c[0], *c.iter().min().unwrap());
        }
    }
}

#[test]
fn enumeration_order_is_lexicographic() {
    let g = enumerate_group(4).unwrap();
    let arrays: Vec<Vec<usize>> = g.iter().map(Permutation::one_line).collect();
    let oracle: Vec<Vec<usize>> = common::all_perms(4)
        .into_iter()
        .map(|p| p.into_iter().map(|x| x + 1).collect())
        .collect();
    assert_eq!(arrays, oracle);
    for (i, p) in g.iter().enumerate() {
        assert_eq!(p.rank(), i);
        assert_eq!(Permutation::unrank(4, i), *p);
    }
    assert_eq!(enumerate_group(3).unwrap().last().unwrap().one_line(), vec![3, 2, 1]);
}

#[test]
fn right_cosets_partition_the_group() {
    for n in 1..=5 {
        for mask in 0u32..(1 << n) {
            let t: BTreeSet<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let system = right_cosets(n, &t).unwrap();
            let size = young_subgroup(n, &t).unwrap().len();
            assert_eq!(size as u64, common::factorial(t.len() as u64));
            assert_eq!(system.index() * size, common::factorial(n as u64) as usize);
            assert!(system.representatives()[0].is_identity());
            let mut seen = BTreeSet::new();
            for i in 0..system.index() {
                let members = system.members(i);
                assert_eq!(members.len(), size);
                assert_eq!(members[0], system.representatives()[i], "representative is the smallest member");
                for m in members {
                    assert_eq!(system.coset_of(&m), i);
                    assert!(seen.insert(m));
                }
            }
            assert_eq!(seen.len(), common::factorial(n as u64) as usize);
        }
    }
}

#[test]
fn coset_vectors_are_injective() {
    for n in 2..=5 {
        for k in 1..n {
            let t: BTreeSet<usize> = (k + 1..=n).collect();
            let system = right_cosets(n, &t).unwrap();
            let vectors: Vec<Vec<usize>> = (0..system.index()).map(|i| system.coset_vector(i, k).unwrap()).collect();
            let distinct: BTreeSet<&Vec<usize>> = vectors.iter().collect();
            assert_eq!(distinct.len(), vectors.len());
            let mut sorted = vectors.clone();
            sorted.sort();
            assert_eq!(sorted, vectors, "block order is lexicographic in the vector");
        }
    }
}

proptest! {
    #[test]
    fn associativity_on_s7(a in perm_strategy(7), b in perm_strategy(7), c in perm_strategy(7)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(a in perm_strategy(8)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn text_forms_round_trip(a in perm_strategy(8)) {
        prop_assert_eq!(Permutation::parse(&a.to_string(), None).unwrap(), a.clone());
        prop_assert_eq!(Permutation::parse(&a.cycle_notation(), Some(8)).unwrap(), a.clone());
        prop_assert_eq!(Permutation::unrank(8, a.rank()), a);
    }

    #[test]
    fn cycle_type_accounts_for_every_point(a in perm_strategy(8)) {
        let t = a.cycle_type();
        let total: usize = t.counts().iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum();
        prop_assert_eq!(total, 8);
        prop_assert_eq!(t.moved_points(), a.move_set().len());
        prop_assert_eq!(CycleType::parse(&t.to_string()).unwrap(), t);
    }
}
