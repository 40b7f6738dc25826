mod common;

use std::collections::BTreeSet;

use ybe_core::catalog;
use ybe_core::cycle_set::CycleSetError;
use ybe_core::{CycleSet, Limits, Partition};

fn small_sets() -> Vec<(String, CycleSet)> {
    let mut sets: Vec<(String, CycleSet)> = (1..=3)
        .flat_map(common::cycle_set_tables)
        .map(|t| (format!("{t:?}"), CycleSet::from_table(t).unwrap()))
        .collect();
    for e in catalog::all() {
        let x = e.fixture.cycle_set();
        if x.size() <= 8 {
            sets.push((e.name.to_string(), x));
        }
    }
    sets
}

#[test]
fn congruences_match_brute_force() {
    let limits = Limits::default();
    for (name, x) in small_sets() {
        let t = x.table_rows();
        let oracle: BTreeSet<Vec<usize>> = common::set_partitions(x.size())
            .into_iter()
            .filter(|labels| common::is_congruence(&t, labels))
            .collect();
        let found: BTreeSet<Vec<usize>> = x
            .congruences(&limits)
            .unwrap()
            .iter()
            .map(|p| p.labels().to_vec())
            .collect();
        assert_eq!(found, oracle, "{name}");
    }
}

#[test]
fn quotients_are_cycle_sets_and_projections_homomorphisms() {
    let limits = Limits::default();
    for (name, x) in small_sets() {
        for p in x.congruences(&limits).unwrap() {
            let q = x.quotient(&p).unwrap();
            assert!(common::is_cycle_set(&q.table_rows()), "{name}");
            assert!(x.is_homomorphism(p.labels(), &q), "{name}");
        }
        let coverings = x.coverings(&limits).unwrap();
        assert!(coverings.iter().all(|(p, _)| p.is_equitable()));
        let simple = x.size() > 1 && coverings.iter().all(|(p, _)| p.is_discrete() || p.is_total());
        assert_eq!(x.is_simple(&limits).unwrap(), simple, "{name}");
    }
}

#[test]
fn non_congruence_is_rejected() {
    let x = catalog::entry("simple4").unwrap().fixture.cycle_set();
    let p = Partition::parse("{1,2}{3,4}", 4).unwrap();
    assert!(!common::is_congruence(&x.table_rows(), p.labels()));
    assert!(matches!(
        x.quotient(&p),
        Err(CycleSetError::NotACongruence { .. })
    ));
}

#[test]
fn size_limit_is_reported() {
    let x = catalog::entry("f3-12").unwrap().fixture.cycle_set();
    let tight = Limits {
        congruence_size: 10,
        ..Limits::default()
    };
    assert!(matches!(x.congruences(&tight), Err(CycleSetError::SizeLimit { .. })));
    assert!(x.congruences(&Limits::default()).is_ok());
}

#[test]
fn prime_sizes_are_simple() {
    let limits = Limits::default();
    for n in [2, 3] {
        for t in common::cycle_set_tables(n) {
            let x = CycleSet::from_table(t).unwrap();
            assert!(x.is_simple(&limits).unwrap());
        }
    }
}
