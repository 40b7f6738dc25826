//! Built-in fixtures: the worked examples, transcribed table by table.

use std::fmt;

use thiserror::Error;

use crate::cycle_set::CycleSet;
use crate::extension::{AbelianCocycle, Covering, DynamicalCocycle};
use crate::format;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    CycleSet,
    Solution,
    DCocycle,
    ACocycle,
    Cover,
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureKind::CycleSet => "cycleset",
            FixtureKind::Solution => "solution",
            FixtureKind::DCocycle => "dcocycle",
            FixtureKind::ACocycle => "acocycle",
            FixtureKind::Cover => "cover",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    CycleSet(CycleSet),
    Solution(Solution),
    DCocycle(DynamicalCocycle),
    ACocycle(AbelianCocycle),
    Cover(Covering),
}

impl Fixture {
    pub fn kind(&self) -> FixtureKind {
        match self {
            Fixture::CycleSet(_) => FixtureKind::CycleSet,
            Fixture::Solution(_) => FixtureKind::Solution,
            Fixture::DCocycle(_) => FixtureKind::DCocycle,
            Fixture::ACocycle(_) => FixtureKind::ACocycle,
            Fixture::Cover(_) => FixtureKind::Cover,
        }
    }

    /// The cycle set a fixture describes: cocycles give their extension and
    /// coverings their total space.
    pub fn cycle_set(&self) -> CycleSet {
        match self {
            Fixture::CycleSet(x) => x.clone(),
            Fixture::Solution(s) => s.to_cycle_set(),
            Fixture::DCocycle(c) => c.build_extension(),
            Fixture::ACocycle(c) => c.extension(),
            Fixture::Cover(c) => c.total().clone(),
        }
    }

    /// A self-contained document; cocycles and coverings carry their base or
    /// total space as a leading `cycleset` section.
    pub fn emit(&self) -> String {
        match self {
            Fixture::CycleSet(x) => format::emit_cycle_set(x),
            Fixture::Solution(s) => format::emit_solution(s),
            Fixture::DCocycle(c) => {
                format::emit_cycle_set(c.base()) + &format::emit_dcocycle(c)
            }
            Fixture::ACocycle(c) => {
                format::emit_cycle_set(c.base()) + &format::emit_acocycle(c)
            }
            Fixture::Cover(c) => {
                format::emit_cycle_set(c.total())
                    + &format::emit_partition(&c.partition(), Some(c.labels()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub provenance: &'static str,
    pub fixture: Fixture,
}

impl CatalogEntry {
    pub fn kind(&self) -> FixtureKind {
        self.fixture.kind()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown example `{name}`; available: {}", NAMES.join(", "))]
pub struct UnknownExample {
    pub name: String,
}

pub const NAMES: &[&str] = &[
    "ess-d4",
    "three-elem",
    "simple4",
    "cover6",
    "gi-cocycle",
    "gi6",
    "const-cocycle",
    "const6",
    "f2-6-cocycle",
    "f2-6",
    "f2-10-cocycle",
    "f2-10",
    "f3-12-cocycle",
    "f3-12",
    "cx-cocycle",
    "counterexample8",
];

fn cs(rows: &[&str]) -> CycleSet {
    CycleSet::from_cycle_rows(rows).expect("catalog table is a cycle set")
}

fn labels(names: &str) -> Vec<String> {
    names.chars().map(String::from).collect()
}

fn perm(text: &str, degree: usize) -> Permutation {
    Permutation::parse(text, degree).expect("catalog permutation")
}

pub fn three_elem() -> CycleSet {
    cs(&["id", "id", "(12)"])
}

fn gi_cocycle() -> DynamicalCocycle {
    // (x, y, s) with α_{x,y}(s,-) = (ab), 0-based.
    const SWAPS: [(usize, usize, usize); 6] =
        [(0, 1, 0), (0, 1, 1), (0, 2, 1), (1, 0, 0), (1, 0, 1), (1, 2, 1)];
    DynamicalCocycle::from_fn(three_elem(), labels("ab"), |x, y, s| {
        if SWAPS.contains(&(x, y, s)) {
            perm("(12)", 2)
        } else {
            Permutation::identity(2)
        }
    })
    .expect("catalog cocycle")
}

fn const_cocycle() -> DynamicalCocycle {
    let beta: Vec<Permutation> = (0..9)
        .map(|i| match (i / 3 + 1, i % 3 + 1) {
            (1, 2) | (2, 1) | (3, 2) | (3, 3) => perm("(12)", 2),
            _ => Permutation::identity(2),
        })
        .collect();
    DynamicalCocycle::from_constant(three_elem(), labels("ab"), &beta).expect("catalog cocycle")
}

fn cx_cocycle() -> DynamicalCocycle {
    let base = cs(&["id", "id"]);
    DynamicalCocycle::from_fn(base, labels("abcd"), |x, y, s| {
        let cycles = match (x == y, s) {
            (true, 0 | 1) => "(34)",
            (true, _) => "(12)",
            (false, 0 | 2) => "id",
            (false, _) => "(13)(24)",
        };
        perm(cycles, 4)
    })
    .expect("catalog cocycle")
}

fn f2_6_cocycle() -> AbelianCocycle {
    let mut f = vec![vec![0; 3]; 3];
    f[2][1] = 1;
    AbelianCocycle::new(three_elem(), 2, f).expect("catalog cocycle")
}

pub fn f2_10_base() -> CycleSet {
    cs(&["(45)", "(45)", "(1425)", "(12)", "(12)"])
}

fn f2_10_cocycle() -> AbelianCocycle {
    let f = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 1],
        vec![1, 1, 0, 0, 0],
        vec![1, 1, 0, 0, 0],
    ];
    AbelianCocycle::new(f2_10_base(), 2, f).expect("catalog cocycle")
}

fn f3_12_cocycle() -> AbelianCocycle {
    let base = cs(&["id", "id", "id", "(23)"]);
    let f = (1..=4)
        .map(|x| {
            (1..=4)
                .map(|y| match (x, y) {
                    _ if x == y || y == 4 => 2,
                    (4, 3) => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    AbelianCocycle::new(base, 3, f).expect("catalog cocycle")
}

fn cover6() -> Covering {
    let total = cs(&[
        "(12)(34)(56)",
        "(12)(34)(56)",
        "(12)(3654)",
        "(12)(3456)",
        "(12)(3654)",
        "(12)(3456)",
    ]);
    let parity = Partition::from_labels(&[0, 1, 0, 1, 0, 1]);
    Covering::from_partition(total, &parity)
        .and_then(|c| c.with_fibers(vec![vec![0, 2, 4], vec![1, 3, 5]], labels("abc")))
        .expect("catalog covering")
}

pub fn entry(name: &str) -> Result<CatalogEntry, UnknownExample> {
    let (name, provenance, fixture) = match name {
        "ess-d4" => (
            "ess-d4",
            "four-element solution whose structure group is dihedral of order 8",
            Fixture::Solution(
                Solution::from_cycle_notation(
                    &["(34)", "(1324)", "(1423)", "(12)"],
                    &["(24)", "(1432)", "(1234)", "(13)"],
                )
                .expect("catalog solution"),
            ),
        ),
        "three-elem" => (
            "three-elem",
            "three-element cycle set φ1 = φ2 = id, φ3 = (12)",
            Fixture::CycleSet(three_elem()),
        ),
        "simple4" => (
            "simple4",
            "four-element simple cycle set",
            Fixture::CycleSet(cs(&["(14)", "(1342)", "(23)", "(1243)"])),
        ),
        "cover6" => (
            "cover6",
            "six-element cycle set covering a two-element one, fibers {1,3,5} and {2,4,6} labelled a, b, c",
            Fixture::Cover(cover6()),
        ),
        "gi-cocycle" => (
            "gi-cocycle",
            "dynamical cocycle over three-elem with S = {a,b} whose extension has level 4",
            Fixture::DCocycle(gi_cocycle()),
        ),
        "gi6" => (
            "gi6",
            "six-element multipermutation cycle set of level 4",
            Fixture::CycleSet(cs(&[
                "(25)",
                "(14)",
                "(12)(45)",
                "(25)(36)",
                "(14)(36)",
                "(12)(45)",
            ])),
        ),
        "const-cocycle" => (
            "const-cocycle",
            "constant cocycle over three-elem with β12 = β21 = β32 = β33 = (ab)",
            Fixture::DCocycle(const_cocycle()),
        ),
        "const6" => (
            "const6",
            "extension of three-elem by const-cocycle",
            Fixture::CycleSet(cs(&["(25)", "(14)", "(1245)(36)", "(25)", "(14)", "(1245)(36)"])),
        ),
        "f2-6-cocycle" => (
            "f2-6-cocycle",
            "Z/2 cocycle over three-elem, f(3,2) = 1 and 0 elsewhere",
            Fixture::ACocycle(f2_6_cocycle()),
        ),
        "f2-6" => (
            "f2-6",
            "extension of three-elem by f2-6-cocycle",
            Fixture::CycleSet(cs(&["id", "id", "(1245)", "id", "id", "(1245)"])),
        ),
        "f2-10-cocycle" => (
            "f2-10-cocycle",
            "Z/2 cocycle over a five-element cycle set",
            Fixture::ACocycle(f2_10_cocycle()),
        ),
        "f2-10" => (
            "f2-10",
            "extension of a five-element cycle set by f2-10-cocycle",
            Fixture::CycleSet(cs(&[
                "(4 5)(9 10)",
                "(4 5)(9 10)",
                "(1 4 2 10)(5 6 9 7)",
                "(1 7)(2 6)",
                "(1 7)(2 6)",
                "(4 5)(9 10)",
                "(4 5)(9 10)",
                "(1 4 2 10)(5 6 9 7)",
                "(1 7)(2 6)",
                "(1 7)(2 6)",
            ])),
        ),
        "f3-12-cocycle" => (
            "f3-12-cocycle",
            "Z/3 cocycle over a four-element cycle set, 2 if x = y or y = 4",
            Fixture::ACocycle(f3_12_cocycle()),
        ),
        "f3-12" => (
            "f3-12",
            "extension of a four-element cycle set by f3-12-cocycle",
            Fixture::CycleSet(cs(&[
                "(1 9 5)(4 12 8)",
                "(2 10 6)(4 12 8)",
                "(3 11 7)(4 12 8)",
                "(2 3 6 7 10 11)(4 12 8)",
                "(1 9 5)(4 12 8)",
                "(2 10 6)(4 12 8)",
                "(3 11 7)(4 12 8)",
                "(2 3 6 7 10 11)(4 12 8)",
                "(1 9 5)(4 12 8)",
                "(2 10 6)(4 12 8)",
                "(3 11 7)(4 12 8)",
                "(2 3 6 7 10 11)(4 12 8)",
            ])),
        ),
        "cx-cocycle" => (
            "cx-cocycle",
            "dynamical cocycle over the trivial two-element cycle set with S = {a,b,c,d}",
            Fixture::DCocycle(cx_cocycle()),
        ),
        "counterexample8" => (
            "counterexample8",
            "square-free irretractable cycle set on eight points",
            Fixture::CycleSet(cs(&[
                "(57)",
                "(68)",
                "(26)(48)(57)",
                "(15)(37)(68)",
                "(13)",
                "(24)",
                "(13)(26)(48)",
                "(15)(24)(37)",
            ])),
        ),
        _ => return Err(UnknownExample { name: name.to_string() }),
    };
    Ok(CatalogEntry { name, provenance, fixture })
}

pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| entry(n).expect("listed name")).collect()
}

/// Pairs `(cocycle, printed extension table)`.
pub const EXTENSION_PAIRS: &[(&str, &str)] = &[
    ("gi-cocycle", "gi6"),
    ("const-cocycle", "const6"),
    ("f2-6-cocycle", "f2-6"),
    ("f2-10-cocycle", "f2-10"),
    ("f3-12-cocycle", "f3-12"),
    ("cx-cocycle", "counterexample8"),
];
