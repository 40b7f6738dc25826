use std::collections::HashSet;
use std::fmt;

use super::covering::Covering;
use super::ExtensionError;
use crate::cycle_set::CycleSet;
use crate::partition::Partition;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynamicalViolation {
    Shape { expected: usize, found: usize },
    NotBijective { x: usize, y: usize, s: usize },
    /// Both sides of the cocycle condition at `(x,y,z,r,s,t)`.
    Condition { x: usize, y: usize, z: usize, r: usize, s: usize, t: usize, lhs: usize, rhs: usize },
}

impl fmt::Display for DynamicalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DynamicalViolation::Shape { expected, found } => {
                write!(f, "expected {expected} maps α_(x,y)(s,-), found {found}")
            }
            DynamicalViolation::NotBijective { x, y, s } => write!(
                f,
                "α_({},{})({},-) is not a permutation",
                x + 1,
                y + 1,
                s + 1
            ),
            DynamicalViolation::Condition { x, y, z, r, s, t, lhs, rhs } => write!(
                f,
                "cocycle condition fails at (x,y,z,r,s,t)=({},{},{},{},{},{}): lhs {} rhs {}",
                x + 1,
                y + 1,
                z + 1,
                r + 1,
                s + 1,
                t + 1,
                lhs + 1,
                rhs + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DynamicalCocycleReport {
    pub violations: Vec<DynamicalViolation>,
}

impl DynamicalCocycleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DynamicalCocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Checks a candidate cocycle given as `n²·m` rows, row `(x·n + y)·m + s`
/// holding the images of `t ↦ α_{x,y}(s,t)`.
pub fn validate_dynamical_cocycle(
    base: &CycleSet,
    m: usize,
    alpha: &[Vec<usize>],
) -> DynamicalCocycleReport {
    let n = base.size();
    let mut violations = Vec::new();
    if alpha.len() != n * n * m || alpha.iter().any(|r| r.len() != m || r.iter().any(|&v| v >= m))
    {
        violations.push(DynamicalViolation::Shape {
            expected: n * n * m,
            found: alpha.len(),
        });
        return DynamicalCocycleReport { violations };
    }
    for x in 0..n {
        for y in 0..n {
            for s in 0..m {
                if Permutation::from_images(alpha[(x * n + y) * m + s].clone()).is_err() {
                    violations.push(DynamicalViolation::NotBijective { x, y, s });
                }
            }
        }
    }
    let a = |x: usize, y: usize, s: usize, t: usize| alpha[(x * n + y) * m + s][t];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, xz, yx, yz) = (base.op(x, y), base.op(x, z), base.op(y, x), base.op(y, z));
                for r in 0..m {
                    for s in 0..m {
                        for t in 0..m {
                            let lhs = a(xy, xz, a(x, y, r, s), a(x, z, r, t));
                            let rhs = a(yx, yz, a(y, x, s, r), a(y, z, s, t));
                            if lhs != rhs {
                                violations.push(DynamicalViolation::Condition {
                                    x,
                                    y,
                                    z,
                                    r,
                                    s,
                                    t,
                                    lhs,
                                    rhs,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    DynamicalCocycleReport { violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantViolation {
    Shape { expected: usize, found: usize },
    DegreeMismatch { x: usize, y: usize },
    /// `β_{x·y,x·z} β_{x,z}` versus `β_{y·x,y·z} β_{y,z}`.
    Condition { x: usize, y: usize, z: usize, lhs: Permutation, rhs: Permutation },
}

impl fmt::Display for ConstantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantViolation::Shape { expected, found } => {
                write!(f, "expected {expected} permutations β_(x,y), found {found}")
            }
            ConstantViolation::DegreeMismatch { x, y } => {
                write!(f, "β_({},{}) has the wrong degree", x + 1, y + 1)
            }
            ConstantViolation::Condition { x, y, z, lhs, rhs } => write!(
                f,
                "constant cocycle condition fails at (x,y,z)=({},{},{}): {} vs {}",
                x + 1,
                y + 1,
                z + 1,
                lhs,
                rhs
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstantCocycleReport {
    pub violations: Vec<ConstantViolation>,
}

impl ConstantCocycleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ConstantCocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Checks `β_{x·y,x·z} β_{x,z} = β_{y·x,y·z} β_{y,z}` for a family `β`
/// indexed by `x·n + y`, all of degree `m`.
pub fn validate_constant_cocycle(
    base: &CycleSet,
    m: usize,
    beta: &[Permutation],
) -> ConstantCocycleReport {
    let n = base.size();
    let mut violations = Vec::new();
    if beta.len() != n * n {
        violations.push(ConstantViolation::Shape {
            expected: n * n,
            found: beta.len(),
        });
        return ConstantCocycleReport { violations };
    }
    for (i, b) in beta.iter().enumerate() {
        if b.degree() != m {
            violations.push(ConstantViolation::DegreeMismatch { x: i / n, y: i % n });
        }
    }
    if !violations.is_empty() {
        return ConstantCocycleReport { violations };
    }
    let b = |x: usize, y: usize| &beta[x * n + y];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = b(base.op(x, y), base.op(x, z)).compose_unchecked(b(x, z));
                let rhs = b(base.op(y, x), base.op(y, z)).compose_unchecked(b(y, z));
                if lhs != rhs {
                    violations.push(ConstantViolation::Condition { x, y, z, lhs, rhs });
                }
            }
        }
    }
    ConstantCocycleReport { violations }
}

/// A validated dynamical cocycle `α: X × X × S → Sym(S)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DynamicalCocycle {
    base: CycleSet,
    labels: Vec<String>,
    alpha: Vec<Permutation>,
}

fn check_labels(labels: &[String]) -> Result<(), ExtensionError> {
    let distinct: HashSet<&String> = labels.iter().collect();
    if labels.is_empty() || distinct.len() != labels.len() {
        return Err(ExtensionError::BadLabels);
    }
    Ok(())
}

/// Labels `1..=m`, used when a label set has no names of its own.
pub(crate) fn numeric_labels(m: usize, start: usize) -> Vec<String> {
    (start..start + m).map(|i| i.to_string()).collect()
}

impl DynamicalCocycle {
    /// `alpha[(x·n + y)·m + s]` is the permutation `t ↦ α_{x,y}(s,t)`.
    pub fn new(
        base: CycleSet,
        labels: Vec<String>,
        alpha: Vec<Permutation>,
    ) -> Result<Self, ExtensionError> {
        check_labels(&labels)?;
        let m = labels.len();
        let n = base.size();
        if alpha.len() != n * n * m {
            return Err(ExtensionError::Shape {
                expected: n * n * m,
                found: alpha.len(),
            });
        }
        let rows: Vec<Vec<usize>> = alpha.iter().map(|p| p.images().to_vec()).collect();
        let report = validate_dynamical_cocycle(&base, m, &rows);
        if !report.is_valid() {
            return Err(ExtensionError::InvalidCocycle(report));
        }
        Ok(DynamicalCocycle { base, labels, alpha })
    }

    /// Builds `α` pointwise from `(x, y, s) ↦ α_{x,y}(s,-)`.
    pub fn from_fn(
        base: CycleSet,
        labels: Vec<String>,
        f: impl Fn(usize, usize, usize) -> Permutation,
    ) -> Result<Self, ExtensionError> {
        let n = base.size();
        let m = labels.len();
        let alpha = (0..n * n * m)
            .map(|i| f(i / (n * m), (i / m) % n, i % m))
            .collect();
        Self::new(base, labels, alpha)
    }

    /// `α_{x,y}(s,t) = t`.
    pub fn trivial(base: CycleSet, labels: Vec<String>) -> Result<Self, ExtensionError> {
        let m = labels.len();
        Self::from_fn(base, labels, |_, _, _| Permutation::identity(m))
    }

    /// Embeds a constant cocycle `α_{x,y}(s,t) = β_{x,y}(t)` after checking
    /// the reduced condition on `β`.
    pub fn from_constant(
        base: CycleSet,
        labels: Vec<String>,
        beta: &[Permutation],
    ) -> Result<Self, ExtensionError> {
        check_labels(&labels)?;
        let report = validate_constant_cocycle(&base, labels.len(), beta);
        if !report.is_valid() {
            return Err(ExtensionError::InvalidConstant(report));
        }
        let n = base.size();
        Self::from_fn(base, labels, |x, y, _| beta[x * n + y].clone())
    }

    pub fn base(&self) -> &CycleSet {
        &self.base
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `|S|`.
    pub fn fiber_size(&self) -> usize {
        self.labels.len()
    }

    pub fn map(&self, x: usize, y: usize, s: usize) -> &Permutation {
        let (n, m) = (self.base.size(), self.labels.len());
        &self.alpha[(x * n + y) * m + s]
    }

    /// `α_{x,y}(s,t)`.
    #[inline]
    pub fn apply(&self, x: usize, y: usize, s: usize, t: usize) -> usize {
        self.map(x, y, s).apply(t)
    }

    pub fn maps(&self) -> &[Permutation] {
        &self.alpha
    }

    /// `α` does not depend on its `s` argument.
    pub fn is_constant(&self) -> bool {
        let m = self.fiber_size();
        self.alpha.chunks(m).all(|c| c.iter().all(|p| *p == c[0]))
    }

    /// Index of `(s, x)` in the extension.
    #[inline]
    pub fn point(&self, s: usize, x: usize) -> usize {
        s * self.base.size() + x
    }

    /// `S ×_α X` with `(s,x)·(t,y) = (α_{x,y}(s,t), x·y)`.
    pub fn build_extension(&self) -> CycleSet {
        let (n, m) = (self.base.size(), self.fiber_size());
        let mut rows = vec![vec![0; n * m]; n * m];
        for s in 0..m {
            for x in 0..n {
                for t in 0..m {
                    for y in 0..n {
                        rows[self.point(s, x)][self.point(t, y)] =
                            self.point(self.apply(x, y, s, t), self.base.op(x, y));
                    }
                }
            }
        }
        CycleSet::from_table(rows).expect("extension by a valid cocycle is a cycle set")
    }

    /// Partition of the extension into fibers of `(s,x) ↦ x`.
    pub fn projection(&self) -> Partition {
        let n = self.base.size();
        let labels: Vec<usize> = (0..n * self.fiber_size()).map(|i| i % n).collect();
        Partition::from_labels(&labels)
    }

    /// The projection `S ×_α X → X` with fiber bijections `(s,x) ↦ s`.
    pub fn canonical_covering(&self) -> Covering {
        let (n, m) = (self.base.size(), self.fiber_size());
        let fibers = (0..n)
            .map(|x| (0..m).map(|s| self.point(s, x)).collect())
            .collect();
        Covering::new(
            self.build_extension(),
            self.base.clone(),
            (0..n * m).map(|i| i % n).collect(),
            fibers,
            self.labels.clone(),
        )
        .expect("canonical projection is a covering")
    }

    /// `α_{x,x}(s,s) = s` for all `x, s`; over a square-free base this is
    /// exactly square-freeness of the extension.
    pub fn is_square_free_compatible(&self) -> bool {
        (0..self.base.size()).all(|x| (0..self.fiber_size()).all(|s| self.apply(x, x, s, s) == s))
    }

    /// The cohomologous cocycle
    /// `β_{x,y}(s,t) = γ_{x·y}(α_{x,y}(γ_x⁻¹(s), γ_y⁻¹(t)))`.
    pub fn shift(&self, gamma: &[Permutation]) -> Result<DynamicalCocycle, ExtensionError> {
        let (n, m) = (self.base.size(), self.fiber_size());
        if gamma.len() != n || gamma.iter().any(|g| g.degree() != m) {
            return Err(ExtensionError::Shape {
                expected: n,
                found: gamma.len(),
            });
        }
        let inv: Vec<Permutation> = gamma.iter().map(Permutation::inverse).collect();
        let base = &self.base;
        let alpha = (0..n * n * m)
            .map(|i| {
                let (x, y, s) = (i / (n * m), (i / m) % n, i % m);
                let images = (0..m)
                    .map(|t| {
                        let inner = self.apply(x, y, inv[x].apply(s), inv[y].apply(t));
                        gamma[base.op(x, y)].apply(inner)
                    })
                    .collect();
                Permutation::from_images(images).expect("shifted map is bijective")
            })
            .collect();
        DynamicalCocycle::new(self.base.clone(), self.labels.clone(), alpha)
    }

    /// `(s,x) ↦ (γ_x(s), x)` as a permutation of the extension's points.
    pub fn shift_map(&self, gamma: &[Permutation]) -> Permutation {
        let (n, m) = (self.base.size(), self.fiber_size());
        let images = (0..n * m)
            .map(|i| self.point(gamma[i % n].apply(i / n), i % n))
            .collect();
        Permutation::from_images(images).expect("fiberwise bijection")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three() -> CycleSet {
        CycleSet::from_cycle_rows(&["id", "id", "(12)"]).unwrap()
    }

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn gi() -> DynamicalCocycle {
        let set = [(0, 1, 0), (0, 1, 1), (0, 2, 1), (1, 0, 0), (1, 0, 1), (1, 2, 1)];
        let swap = Permutation::parse("(12)", 2).unwrap();
        DynamicalCocycle::from_fn(three(), ab(), |x, y, s| {
            if set.contains(&(x, y, s)) {
                swap.clone()
            } else {
                Permutation::identity(2)
            }
        })
        .unwrap()
    }

    #[test]
    fn trivial_cocycle_is_valid() {
        let t = DynamicalCocycle::trivial(three(), ab()).unwrap();
        assert!(t.is_constant());
        assert!(t.is_square_free_compatible());
        let single = CycleSet::from_cycle_rows(&["id"]).unwrap();
        let ext = DynamicalCocycle::trivial(single, ab()).unwrap().build_extension();
        assert_eq!(ext.size(), 2);
        assert!(ext.rows().iter().all(Permutation::is_identity));
    }

    #[test]
    fn rejects_the_singleton_counterexample() {
        let single = CycleSet::from_cycle_rows(&["id"]).unwrap();
        let report = validate_dynamical_cocycle(&single, 2, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            report.violations[0],
            DynamicalViolation::Condition {
                x: 0,
                y: 0,
                z: 0,
                r: 0,
                s: 1,
                t: 0,
                lhs: 1,
                rhs: 0
            }
        );
        let report = validate_dynamical_cocycle(&single, 2, &[vec![0, 0], vec![1, 0]]);
        assert!(report
            .violations
            .contains(&DynamicalViolation::NotBijective { x: 0, y: 0, s: 0 }));
        assert!(matches!(
            validate_dynamical_cocycle(&single, 2, &[vec![0, 1]]).violations[0],
            DynamicalViolation::Shape { .. }
        ));
    }

    #[test]
    fn square_free_compatibility() {
        let single = CycleSet::from_cycle_rows(&["id"]).unwrap();
        let swap = Permutation::parse("(12)", 2).unwrap();
        let c = DynamicalCocycle::from_fn(single, ab(), |_, _, _| swap.clone()).unwrap();
        assert!(!c.is_square_free_compatible());
        assert!(!c.build_extension().is_square_free());
        assert!(gi().is_square_free_compatible());
    }

    #[test]
    fn gi_extension_rows() {
        let ext = gi().build_extension();
        let rows: Vec<String> = ext.rows().iter().map(Permutation::to_cycles).collect();
        assert_eq!(
            rows,
            vec!["(25)", "(14)", "(12)(45)", "(25)(36)", "(14)(36)", "(12)(45)"]
        );
    }

    #[test]
    fn shifting() {
        let c = gi();
        let id = vec![Permutation::identity(2); 3];
        assert_eq!(c.shift(&id).unwrap(), c);
        let g = vec![
            Permutation::parse("(12)", 2).unwrap(),
            Permutation::identity(2),
            Permutation::identity(2),
        ];
        let shifted = c.shift(&g).unwrap();
        let inv: Vec<Permutation> = g.iter().map(Permutation::inverse).collect();
        assert_eq!(shifted.shift(&inv).unwrap(), c);
        let f = c.shift_map(&g);
        assert!(c
            .build_extension()
            .is_homomorphism(f.images(), &shifted.build_extension()));
        assert!(matches!(c.shift(&g[..2]), Err(ExtensionError::Shape { .. })));
    }

    #[test]
    fn constant_cocycles() {
        let swap = Permutation::parse("(12)", 2).unwrap();
        let id = Permutation::identity(2);
        let beta: Vec<Permutation> = [
            (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2),
        ]
        .iter()
        .map(|&xy| {
            if [(0, 1), (1, 0), (2, 1), (2, 2)].contains(&xy) {
                swap.clone()
            } else {
                id.clone()
            }
        })
        .collect();
        assert!(validate_constant_cocycle(&three(), 2, &beta).is_valid());
        let c = DynamicalCocycle::from_constant(three(), ab(), &beta).unwrap();
        assert!(c.is_constant());
        let rows: Vec<String> = c.build_extension().rows().iter().map(Permutation::to_cycles).collect();
        assert_eq!(rows[2], "(1245)(36)");
        assert_eq!(rows[5], "(1245)(36)");
        assert!(matches!(
            validate_constant_cocycle(&three(), 2, &beta[..3]).violations[0],
            ConstantViolation::Shape { .. }
        ));
        assert!(matches!(
            DynamicalCocycle::from_constant(three(), vec!["a".into(), "a".into()], &beta),
            Err(ExtensionError::BadLabels)
        ));
    }
}
