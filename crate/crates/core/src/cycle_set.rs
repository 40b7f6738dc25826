//! Finite cycle sets: a set with a binary operation `x·y` whose left
//! translations `φ_x = x·-` are bijective and which satisfies
//! `(x·y)·(x·z) = (y·x)·(y·z)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::limits::Limits;
use crate::partition::{Partition, UnionFind};
use crate::perm::{PermError, Permutation};

/// A single reason a table fails to be a cycle set. Points are 0-based;
/// `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleSetViolation {
    Empty,
    Shape { row: usize, len: usize, expected: usize },
    EntryOutOfRange { x: usize, y: usize },
    RowNotBijective { x: usize },
    Identity { x: usize, y: usize, z: usize, lhs: usize, rhs: usize },
}

impl fmt::Display for CycleSetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CycleSetViolation::Empty => write!(f, "empty table"),
            CycleSetViolation::Shape { row, len, expected } => {
                write!(f, "row {} has {len} entries, expected {expected}", row + 1)
            }
            CycleSetViolation::EntryOutOfRange { x, y } => {
                write!(f, "entry {}·{} is out of range", x + 1, y + 1)
            }
            CycleSetViolation::RowNotBijective { x } => {
                write!(f, "row {} is not a permutation", x + 1)
            }
            CycleSetViolation::Identity { x, y, z, lhs, rhs } => write!(
                f,
                "cycle set identity fails at (x,y,z)=({},{},{}): lhs {} rhs {}",
                x + 1,
                y + 1,
                z + 1,
                lhs + 1,
                rhs + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleSetReport {
    pub violations: Vec<CycleSetViolation>,
}

impl CycleSetReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CycleSetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleSetError {
    #[error("not a cycle set: {0}")]
    Invalid(CycleSetReport),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(
        "quotient not well defined: {}·{} and {}·{} lie in different classes",
        .x + 1, .y + 1, .x2 + 1, .y2 + 1
    )]
    WellDefinednessFailure { x: usize, y: usize, x2: usize, y2: usize },
    #[error(
        "not a congruence: {}·{} and {}·{} lie in different classes",
        .x + 1, .y + 1, .x2 + 1, .y2 + 1
    )]
    NotACongruence { x: usize, y: usize, x2: usize, y2: usize },
    #[error("partition has {found} points, cycle set has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("cycle set of size {size} exceeds the limit {limit}")]
    SizeLimit { size: usize, limit: usize },
}

/// Checks every cycle-set axiom of a 0-based `n × n` table and lists all
/// violations. Identity failures are listed in lexicographic `(x,y,z)` order.
pub fn validate_cycle_set(rows: &[Vec<usize>]) -> CycleSetReport {
    let n = rows.len();
    let mut violations = Vec::new();
    if n == 0 {
        violations.push(CycleSetViolation::Empty);
        return CycleSetReport { violations };
    }
    for (x, row) in rows.iter().enumerate() {
        if row.len() != n {
            violations.push(CycleSetViolation::Shape {
                row: x,
                len: row.len(),
                expected: n,
            });
        }
    }
    if !violations.is_empty() {
        return CycleSetReport { violations };
    }
    let mut in_range = true;
    for (x, row) in rows.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                violations.push(CycleSetViolation::EntryOutOfRange { x, y });
                in_range = false;
            }
        }
    }
    if !in_range {
        return CycleSetReport { violations };
    }
    for (x, row) in rows.iter().enumerate() {
        if Permutation::from_images(row.clone()).is_err() {
            violations.push(CycleSetViolation::RowNotBijective { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = rows[rows[x][y]][rows[x][z]];
                let rhs = rows[rows[y][x]][rows[y][z]];
                if lhs != rhs {
                    violations.push(CycleSetViolation::Identity { x, y, z, lhs, rhs });
                }
            }
        }
    }
    CycleSetReport { violations }
}

/// A validated finite cycle set on `{0, ..., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleSet {
    n: usize,
    table: Vec<usize>,
    divide: Vec<usize>,
}

/// Outcome of iterating the retraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MplKind {
    Multipermutation { level: usize },
    Irretractable { stable_size: usize, steps_to_fixpoint: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MplResult {
    pub kind: MplKind,
    /// `|X|, |Ret X|, |Ret² X|, ...`; for irretractable inputs the repeated
    /// fixpoint size is included once more at the end.
    pub chain: Vec<usize>,
}

impl MplResult {
    pub fn is_multipermutation(&self) -> bool {
        matches!(self.kind, MplKind::Multipermutation { .. })
    }
}

impl fmt::Display for MplResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MplKind::Multipermutation { level } => write!(f, "multipermutation level {level}"),
            MplKind::Irretractable {
                stable_size,
                steps_to_fixpoint,
            } => write!(
                f,
                "irretractable: stable size {stable_size} after {steps_to_fixpoint} steps"
            ),
        }
    }
}

impl CycleSet {
    /// Validates a 0-based table.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, CycleSetError> {
        let report = validate_cycle_set(&rows);
        if !report.is_valid() {
            return Err(CycleSetError::Invalid(report));
        }
        Ok(Self::from_valid_rows(rows))
    }

    pub fn from_rows(rows: &[Permutation]) -> Result<Self, CycleSetError> {
        Self::from_table(rows.iter().map(|p| p.images().to_vec()).collect())
    }

    /// Rows `φ_1, ..., φ_n` in cycle notation; the degree is the row count.
    pub fn from_cycle_rows(rows: &[&str]) -> Result<Self, CycleSetError> {
        let n = rows.len();
        let perms = rows
            .iter()
            .map(|r| Permutation::parse(r, n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(&perms)
    }

    fn from_valid_rows(rows: Vec<Vec<usize>>) -> Self {
        let n = rows.len();
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let mut divide = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                divide[x * n + table[x * n + y]] = y;
            }
        }
        CycleSet { n, table, divide }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `x·y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// The unique `w` with `x·w = z`.
    #[inline]
    pub fn left_divide(&self, x: usize, z: usize) -> usize {
        self.divide[x * self.n + z]
    }

    pub fn row(&self, x: usize) -> Permutation {
        Permutation::from_images(self.table[x * self.n..(x + 1) * self.n].to_vec())
            .expect("validated row")
    }

    pub fn rows(&self) -> Vec<Permutation> {
        (0..self.n).map(|x| self.row(x)).collect()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.n).all(|x| self.op(x, x) == x)
    }

    /// `map` is a cycle-set homomorphism from `self` into `target`.
    pub fn is_homomorphism(&self, map: &[usize], target: &CycleSet) -> bool {
        map.len() == self.n
            && map.iter().all(|&v| v < target.n)
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| map[self.op(x, y)] == target.op(map[x], map[y]))
            })
    }

    /// Transports the structure along `f`, so that `f` becomes an
    /// isomorphism from `self` onto the result.
    pub fn relabel(&self, f: &Permutation) -> CycleSet {
        let n = self.n;
        let mut rows = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                rows[f.apply(x)][f.apply(y)] = f.apply(self.op(x, y));
            }
        }
        CycleSet::from_valid_rows(rows)
    }

    /// Quotient by a congruence; class `k` of the result is the `k`-th class
    /// of `partition`.
    pub fn quotient(&self, partition: &Partition) -> Result<CycleSet, CycleSetError> {
        if partition.len() != self.n {
            return Err(CycleSetError::SizeMismatch {
                expected: self.n,
                found: partition.len(),
            });
        }
        let k = partition.num_classes();
        let mut rows = vec![vec![usize::MAX; k]; k];
        let mut witness = vec![(0, 0); k * k];
        for x in 0..self.n {
            for y in 0..self.n {
                let (cx, cy) = (partition.class_of(x), partition.class_of(y));
                let cz = partition.class_of(self.op(x, y));
                if rows[cx][cy] == usize::MAX {
                    rows[cx][cy] = cz;
                    witness[cx * k + cy] = (x, y);
                } else if rows[cx][cy] != cz {
                    let (x2, y2) = witness[cx * k + cy];
                    return Err(CycleSetError::NotACongruence { x: x2, y: y2, x2: x, y2: y });
                }
            }
        }
        CycleSet::from_table(rows)
    }

    /// Points with equal rows.
    pub fn retract_partition(&self) -> Partition {
        let rows: Vec<&[usize]> = self.table.chunks(self.n).collect();
        Partition::from_labels(&rows)
    }

    pub fn retract(&self) -> Result<(CycleSet, Partition), CycleSetError> {
        let partition = self.retract_partition();
        let quotient = self.quotient(&partition).map_err(|e| match e {
            CycleSetError::NotACongruence { x, y, x2, y2 } => {
                CycleSetError::WellDefinednessFailure { x, y, x2, y2 }
            }
            other => other,
        })?;
        Ok((quotient, partition))
    }

    /// Iterates the retraction until a singleton or a fixpoint. A singleton
    /// input has level 0.
    pub fn mpl(&self) -> MplResult {
        let mut chain = vec![self.n];
        let mut current = self.clone();
        loop {
            if current.n == 1 {
                return MplResult {
                    kind: MplKind::Multipermutation {
                        level: chain.len() - 1,
                    },
                    chain,
                };
            }
            let (next, _) = current
                .retract()
                .expect("retraction of a valid cycle set is well defined");
            chain.push(next.n);
            if next.n == current.n {
                return MplResult {
                    kind: MplKind::Irretractable {
                        stable_size: next.n,
                        steps_to_fixpoint: chain.len() - 2,
                    },
                    chain,
                };
            }
            current = next;
        }
    }

    /// Per-point isomorphism invariant: cycle type of the row and whether
    /// the point is idempotent.
    fn point_invariants(&self) -> Vec<(Vec<usize>, bool)> {
        (0..self.n)
            .map(|x| (self.row(x).cycle_type(), self.op(x, x) == x))
            .collect()
    }

    /// The lexicographically least isomorphism `self → other`, if any.
    pub fn isomorphism(&self, other: &CycleSet) -> Option<Permutation> {
        if self.n != other.n {
            return None;
        }
        let ours = self.point_invariants();
        let theirs = other.point_invariants();
        let mut a = ours.clone();
        let mut b = theirs.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
        let mut search = IsoSearch {
            from: self,
            to: other,
            ours,
            theirs,
            forward: vec![usize::MAX; self.n],
            backward: vec![usize::MAX; self.n],
        };
        if search.extend(0) {
            Some(Permutation::from_images(search.forward).expect("bijection"))
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &CycleSet) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Smallest congruence containing the given one.
    fn close_congruence(&self, uf: &mut UnionFind) {
        loop {
            let mut changed = false;
            for x in 0..self.n {
                let r = uf.find(x);
                if r == x {
                    continue;
                }
                for y in 0..self.n {
                    changed |= uf.union(self.op(x, y), self.op(r, y));
                    changed |= uf.union(self.op(y, x), self.op(y, r));
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Smallest congruence identifying `a` and `b`.
    pub fn principal_congruence(&self, a: usize, b: usize) -> Partition {
        let mut uf = UnionFind::new(self.n);
        uf.union(a, b);
        self.close_congruence(&mut uf);
        uf.to_partition()
    }

    pub fn join_congruences(&self, p: &Partition, q: &Partition) -> Partition {
        let mut uf = UnionFind::from_partition(p);
        for class in q.classes() {
            for w in class.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        self.close_congruence(&mut uf);
        uf.to_partition()
    }

    /// All congruences, most classes first, ties broken by label vector.
    pub fn congruences(&self, limits: &Limits) -> Result<Vec<Partition>, CycleSetError> {
        if self.n > limits.congruence_size {
            return Err(CycleSetError::SizeLimit {
                size: self.n,
                limit: limits.congruence_size,
            });
        }
        let principals: BTreeSet<Partition> = (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.principal_congruence(a, b))
            .collect();
        let mut found = BTreeSet::new();
        let mut queue = VecDeque::new();
        let discrete = Partition::discrete(self.n);
        found.insert(discrete.clone());
        queue.push_back(discrete);
        while let Some(c) = queue.pop_front() {
            for p in &principals {
                if p.refines(&c) {
                    continue;
                }
                let j = self.join_congruences(&c, p);
                if found.insert(j.clone()) {
                    queue.push_back(j);
                }
            }
        }
        let mut out: Vec<Partition> = found.into_iter().collect();
        out.sort_by(|a, b| {
            b.num_classes()
                .cmp(&a.num_classes())
                .then_with(|| a.cmp(b))
        });
        Ok(out)
    }

    /// Congruences with equal-sized classes, with their quotients.
    pub fn coverings(&self, limits: &Limits) -> Result<Vec<(Partition, CycleSet)>, CycleSetError> {
        self.congruences(limits)?
            .into_iter()
            .filter(Partition::is_equitable)
            .map(|p| {
                let q = self.quotient(&p)?;
                Ok((p, q))
            })
            .collect()
    }

    /// `|X| > 1` and every covering is trivial.
    pub fn is_simple(&self, limits: &Limits) -> Result<bool, CycleSetError> {
        if self.n <= 1 {
            return Ok(false);
        }
        Ok(self
            .coverings(limits)?
            .iter()
            .all(|(p, _)| p.is_discrete() || p.is_total()))
    }
}

impl fmt::Debug for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(Permutation::to_cycles).collect();
        write!(f, "CycleSet[{}]", rows.join(", "))
    }
}

struct IsoSearch<'a> {
    from: &'a CycleSet,
    to: &'a CycleSet,
    ours: Vec<(Vec<usize>, bool)>,
    theirs: Vec<(Vec<usize>, bool)>,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl IsoSearch<'_> {
    fn consistent_pair(&self, a: usize, b: usize) -> bool {
        let p = self.from.op(a, b);
        let q = self.to.op(self.forward[a], self.forward[b]);
        (self.forward[p] == usize::MAX || self.forward[p] == q)
            && (self.backward[q] == usize::MAX || self.backward[q] == p)
    }

    fn extend(&mut self, x: usize) -> bool {
        let n = self.from.n;
        if x == n {
            return true;
        }
        for c in 0..n {
            if self.backward[c] != usize::MAX || self.ours[x] != self.theirs[c] {
                continue;
            }
            self.forward[x] = c;
            self.backward[c] = x;
            let ok = (0..=x).all(|b| self.consistent_pair(x, b) && self.consistent_pair(b, x));
            if ok && self.extend(x + 1) {
                return true;
            }
            self.forward[x] = usize::MAX;
            self.backward[c] = usize::MAX;
        }
        false
    }
}

/// Every table on `{0..n-1}` whose rows are permutations, in lexicographic
/// order of rows. Used for exhaustive sweeps at tiny sizes.
pub fn all_row_bijective_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let perms = all_permutations(n);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for p in &perms {
                let mut t = prefix.clone();
                t.push(p.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// All permutations of `0..n` as image vectors, in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
