mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use ybe_core::catalog;
use ybe_core::group::named;
use ybe_core::{exact_isomorphic, Limits, PermGroup, Permutation, Solution};

/// Closure by repeated multiplication, independent of the library.
fn naive_closure(gens: &[Permutation], degree: usize) -> BTreeSet<Vec<usize>> {
    let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
    elements.insert((0..degree).collect());
    loop {
        let mut next = elements.clone();
        for e in &elements {
            for g in gens {
                next.insert(e.iter().map(|&i| g.apply(i)).collect());
            }
        }
        if next.len() == elements.len() {
            return elements;
        }
        elements = next;
    }
}

fn order_of(p: &[usize]) -> u64 {
    let mut q = p.to_vec();
    let mut k = 1;
    while q.iter().enumerate().any(|(i, &v)| i != v) {
        q = q.iter().map(|&i| p[i]).collect();
        k += 1;
    }
    k
}

fn yb_group(name: &str) -> PermGroup {
    let x = catalog::entry(name).unwrap().fixture.cycle_set();
    Solution::from_cycle_set(&x).yb_group(&Limits::default()).unwrap()
}

#[test]
fn group_orders_match_naive_closure() {
    for name in ["ess-d4", "counterexample8", "gi6", "simple4", "const6"] {
        let x = catalog::entry(name).unwrap().fixture.cycle_set();
        let s = Solution::from_cycle_set(&x);
        let naive = naive_closure(s.sigmas(), x.size());
        let g = yb_group(name);
        assert_eq!(g.order(), naive.len(), "{name}");
        let mut histogram = BTreeMap::new();
        for e in &naive {
            *histogram.entry(order_of(e)).or_insert(0usize) += 1;
        }
        assert_eq!(g.fingerprint().order_histogram, histogram, "{name}");
    }
}

#[test]
fn reference_groups() {
    let limits = Limits::default();
    let d4 = named::group("D4").unwrap();
    let g = yb_group("ess-d4");
    assert_eq!(g.order(), 8);
    assert!(exact_isomorphic(&g, &d4, &limits).unwrap());
    assert!(!exact_isomorphic(&g, &named::group("C8").unwrap(), &limits).unwrap());
    assert!(!exact_isomorphic(&g, &named::group("C2^3").unwrap(), &limits).unwrap());
    let h = yb_group("counterexample8");
    assert_eq!(h.order(), 64);
    assert!(exact_isomorphic(&h, &named::group("D4xD4").unwrap(), &limits).unwrap());
}

fn conjugator(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(common::config(24))]

    #[test]
    fn fingerprints_are_conjugation_invariant(c in conjugator(8), name_idx in 0usize..3) {
        let name = ["counterexample8", "gi6", "ess-d4"][name_idx];
        let g = yb_group(name);
        let c = if g.degree() == 8 { c } else {
            Permutation::from_images(c.images().iter().copied().filter(|&v| v < g.degree()).collect()).unwrap()
        };
        let h = g.conjugate(&c);
        prop_assert_eq!(g.fingerprint(), h.fingerprint());
        prop_assert!(exact_isomorphic(&g, &h, &Limits::default()).unwrap());
    }
}
