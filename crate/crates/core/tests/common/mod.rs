//! Brute-force oracles shared by the integration tests. They work on raw
//! 0-based tables and avoid the library's own checkers.

#![allow(dead_code)]

use itertools::Itertools;
use proptest::test_runner::{Config, RngSeed};

use ybe_core::limits::seed_from_env;

pub fn config(cases: u32) -> Config {
    let seed = seed_from_env();
    eprintln!("proptest seed {seed:#x}");
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn is_bijection(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter().all(|&v| v < row.len() && !std::mem::replace(&mut seen[v], true))
}

/// Bijective rows and `(x·y)·(x·z) = (y·x)·(y·z)`.
pub fn is_cycle_set(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    t.iter().all(|r| r.len() == n && is_bijection(r))
        && (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .all(|((x, y), z)| t[t[x][y]][t[x][z]] == t[t[y][x]][t[y][z]])
}

/// Every `n×n` table with bijective rows satisfying the cycle set identity.
pub fn cycle_set_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    (0..n)
        .map(|_| perms.iter().cloned())
        .multi_cartesian_product()
        .filter(|t| is_cycle_set(t))
        .collect()
}

/// `r(x,y) = (σ_x(y), τ_y(x))` is involutive and satisfies the braid relation.
pub fn is_involutive_solution(sigma: &[Vec<usize>], tau: &[Vec<usize>]) -> bool {
    let n = sigma.len();
    let r = |x: usize, y: usize| (sigma[x][y], tau[y][x]);
    if !(sigma.iter().chain(tau).all(|row| is_bijection(row))) {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            let (a, b) = r(x, y);
            if r(a, b) != (x, y) {
                return false;
            }
            for z in 0..n {
                let r12 = |(a, b, c): (usize, usize, usize)| {
                    let (p, q) = r(a, b);
                    (p, q, c)
                };
                let r23 = |(a, b, c): (usize, usize, usize)| {
                    let (p, q) = r(b, c);
                    (a, p, q)
                };
                if r12(r23(r12((x, y, z)))) != r23(r12(r23((x, y, z)))) {
                    return false;
                }
            }
        }
    }
    true
}

/// All partitions of `0..n` as class labels in first-occurrence form.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, blocks: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=blocks {
            prefix.push(b);
            go(prefix, blocks.max(b + 1), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, n, &mut out);
    out
}

/// `x ∼ x'` and `y ∼ y'` imply `x·y ∼ x'·y'`.
pub fn is_congruence(t: &[Vec<usize>], labels: &[usize]) -> bool {
    let n = t.len();
    (0..n).cartesian_product(0..n).all(|(x, x2)| {
        labels[x] != labels[x2]
            || (0..n).cartesian_product(0..n).all(|(y, y2)| {
                labels[y] != labels[y2] || labels[t[x][y]] == labels[t[x2][y2]]
            })
    })
}

/// Longest chain of `x ↦ [row x]` quotients; `None` if it stalls above one
/// point.
pub fn mpl_oracle(t: &[Vec<usize>]) -> Option<usize> {
    let mut table = t.to_vec();
    let mut level = 0;
    while table.len() > 1 {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; table.len()];
        for x in 0..table.len() {
            match classes.iter().position(|r| *r == table[x]) {
                Some(c) => class_of[x] = c,
                None => {
                    class_of[x] = classes.len();
                    classes.push(table[x].clone());
                }
            }
        }
        if classes.len() == table.len() {
            return None;
        }
        let k = classes.len();
        let mut rep = vec![usize::MAX; k];
        for x in 0..table.len() {
            if rep[class_of[x]] == usize::MAX {
                rep[class_of[x]] = x;
            }
        }
        table = (0..k)
            .map(|a| (0..k).map(|b| class_of[table[rep[a]][rep[b]]]).collect())
            .collect();
        level += 1;
    }
    Some(level)
}
