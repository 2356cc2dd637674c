use std::collections::BTreeMap;

use wop_core::combinat::factorial;
use wop_core::permgroup::all_permutations;
use wop_core::{class_size, count_d_cycles, partitions, Partition};

fn brute_class_counts(n: u32) -> BTreeMap<Partition, u128> {
    let mut counts = BTreeMap::new();
    for g in all_permutations(n as usize) {
        *counts.entry(g.cycle_type()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn class_sizes_match_enumeration() {
    for n in 1..=8 {
        let counts = brute_class_counts(n);
        for lambda in partitions(n) {
            assert_eq!(
                class_size(&lambda, n).unwrap(),
                counts[&lambda],
                "λ = {lambda}"
            );
        }
        assert_eq!(counts.len(), partitions(n).len());
    }
}

#[test]
fn class_sizes_sum_to_factorial() {
    for n in 1..=8 {
        let total: u128 = partitions(n)
            .iter()
            .map(|l| class_size(l, n).unwrap())
            .sum();
        assert_eq!(total, factorial(n));
    }
}

#[test]
fn d_cycle_counts_are_hook_class_sizes() {
    for n in 2..=8 {
        for d in 2..=n {
            let hook = Partition::hook_cycle(d, n).unwrap();
            assert_eq!(count_d_cycles(n, d), class_size(&hook, n).unwrap());
        }
        assert_eq!(count_d_cycles(n, n + 1), 0);
    }
}

#[test]
fn class_size_rejects_wrong_weight() {
    let lambda = Partition::new(vec![2, 1]).unwrap();
    assert!(class_size(&lambda, 4).is_err());
}
