//! Involutive nondegenerate solutions `r(x,y) = (σ_x(y), τ_y(x))`, stored as
//! the two permutation families.

use std::fmt;

use thiserror::Error;

use crate::cycle_set::CycleSet;
use crate::group::{GroupError, PermGroup};
use crate::limits::Limits;
use crate::partition::Partition;
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Sigma,
    Tau,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sigma => "sigma",
            Family::Tau => "tau",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionViolation {
    Shape { family: Family, row: usize },
    RowNotBijective { family: Family, x: usize },
    NotInvolutive { x: usize, y: usize, image: (usize, usize), back: (usize, usize) },
    Braid { x: usize, y: usize, z: usize, lhs: [usize; 3], rhs: [usize; 3] },
}

impl fmt::Display for SolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SolutionViolation::Shape { family, row } => {
                write!(f, "{family} row {} has the wrong length", row + 1)
            }
            SolutionViolation::RowNotBijective { family, x } => {
                write!(f, "{family}_{} is not a permutation", x + 1)
            }
            SolutionViolation::NotInvolutive { x, y, image, back } => write!(
                f,
                "r²({},{}) = ({},{}) via r = ({},{})",
                x + 1,
                y + 1,
                back.0 + 1,
                back.1 + 1,
                image.0 + 1,
                image.1 + 1
            ),
            SolutionViolation::Braid { x, y, z, lhs, rhs } => write!(
                f,
                "braid relation fails at ({},{},{}): r12 r23 r12 gives ({},{},{}), r23 r12 r23 gives ({},{},{})",
                x + 1,
                y + 1,
                z + 1,
                lhs[0] + 1,
                lhs[1] + 1,
                lhs[2] + 1,
                rhs[0] + 1,
                rhs[1] + 1,
                rhs[2] + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionReport {
    pub violations: Vec<SolutionViolation>,
    /// `r(x,x) = (x,x)` for every `x`; false when the tables are malformed.
    pub square_free: bool,
}

impl SolutionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("not a solution: {0}")]
    Invalid(SolutionReport),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(
        "retraction not well defined at ({},{}) and ({},{})",
        .x + 1, .y + 1, .x2 + 1, .y2 + 1
    )]
    WellDefinednessFailure { x: usize, y: usize, x2: usize, y2: usize },
}

/// Validates candidate 0-based `σ` and `τ` tables: nondegeneracy,
/// involutivity on all pairs, and the braid relation on all triples.
pub fn validate_solution(sigma: &[Vec<usize>], tau: &[Vec<usize>]) -> SolutionReport {
    let n = sigma.len();
    let mut violations = Vec::new();
    for (family, rows) in [(Family::Sigma, sigma), (Family::Tau, tau)] {
        if rows.len() != n {
            violations.push(SolutionViolation::Shape { family, row: rows.len().min(n) });
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n || r.iter().any(|&v| v >= n) {
                violations.push(SolutionViolation::Shape { family, row });
            }
        }
    }
    if !violations.is_empty() || n == 0 {
        return SolutionReport {
            violations,
            square_free: false,
        };
    }
    for (family, rows) in [(Family::Sigma, sigma), (Family::Tau, tau)] {
        for (x, r) in rows.iter().enumerate() {
            if Permutation::from_images(r.clone()).is_err() {
                violations.push(SolutionViolation::RowNotBijective { family, x });
            }
        }
    }
    let r = |x: usize, y: usize| (sigma[x][y], tau[y][x]);
    for x in 0..n {
        for y in 0..n {
            let image = r(x, y);
            let back = r(image.0, image.1);
            if back != (x, y) {
                violations.push(SolutionViolation::NotInvolutive { x, y, image, back });
            }
        }
    }
    let r12 = |v: [usize; 3]| {
        let (a, b) = r(v[0], v[1]);
        [a, b, v[2]]
    };
    let r23 = |v: [usize; 3]| {
        let (b, c) = r(v[1], v[2]);
        [v[0], b, c]
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = [x, y, z];
                let lhs = r12(r23(r12(v)));
                let rhs = r23(r12(r23(v)));
                if lhs != rhs {
                    violations.push(SolutionViolation::Braid { x, y, z, lhs, rhs });
                }
            }
        }
    }
    let square_free = (0..n).all(|x| r(x, x) == (x, x));
    SolutionReport {
        violations,
        square_free,
    }
}

/// A validated solution on `{0, ..., n-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Solution {
    sigma: Vec<Permutation>,
    tau: Vec<Permutation>,
}

impl Solution {
    pub fn new(sigma: Vec<Permutation>, tau: Vec<Permutation>) -> Result<Self, SolutionError> {
        let rows = |ps: &[Permutation]| ps.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>();
        let report = validate_solution(&rows(&sigma), &rows(&tau));
        if !report.is_valid() {
            return Err(SolutionError::Invalid(report));
        }
        Ok(Solution { sigma, tau })
    }

    /// Builds from cycle notation, degree given by the number of rows.
    pub fn from_cycle_notation(sigma: &[&str], tau: &[&str]) -> Result<Self, SolutionError> {
        let n = sigma.len();
        let parse = |rows: &[&str]| {
            rows.iter()
                .map(|r| Permutation::parse(r, n))
                .collect::<Result<Vec<_>, _>>()
        };
        Solution::new(parse(sigma)?, parse(tau)?)
    }

    /// Solution of a cycle set: `τ_y(x) = y*x` is the `w` with `y·w = x`,
    /// and `σ_x(y) = (y*x)·y`.
    pub fn from_cycle_set(x: &CycleSet) -> Solution {
        let n = x.size();
        let tau: Vec<Permutation> = (0..n).map(|y| x.row(y).inverse()).collect();
        let sigma = (0..n)
            .map(|a| {
                let images = (0..n).map(|b| x.op(x.left_divide(b, a), b)).collect();
                Permutation::from_images(images).expect("σ rows of a cycle set are bijective")
            })
            .collect();
        Solution { sigma, tau }
    }

    /// Inverse of [`Solution::from_cycle_set`]: `φ_y = τ_y⁻¹`.
    pub fn to_cycle_set(&self) -> CycleSet {
        let rows: Vec<Permutation> = self.tau.iter().map(Permutation::inverse).collect();
        CycleSet::from_rows(&rows).expect("the cycle set of a solution is valid")
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self, x: usize) -> &Permutation {
        &self.sigma[x]
    }

    pub fn tau(&self, y: usize) -> &Permutation {
        &self.tau[y]
    }

    pub fn sigmas(&self) -> &[Permutation] {
        &self.sigma
    }

    pub fn taus(&self) -> &[Permutation] {
        &self.tau
    }

    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x].apply(y), self.tau[y].apply(x))
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.size()).all(|x| self.r(x, x) == (x, x))
    }

    /// Points with equal `σ`.
    pub fn retract_partition(&self) -> Partition {
        Partition::from_labels(&self.sigma)
    }

    /// Quotient by `x ∼ y ⟺ σ_x = σ_y` with
    /// `r̄([x],[y]) = ([σ_x(y)], [τ_y(x)])`.
    pub fn retract(&self) -> Result<(Solution, Partition), SolutionError> {
        let part = self.retract_partition();
        let n = self.size();
        let k = part.num_classes();
        let mut table: Vec<Option<((usize, usize), (usize, usize))>> = vec![None; k * k];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = self.r(x, y);
                let img = (part.class_of(a), part.class_of(b));
                let slot = &mut table[part.class_of(x) * k + part.class_of(y)];
                match slot {
                    None => *slot = Some((img, (x, y))),
                    Some((prev, (x2, y2))) if *prev != img => {
                        return Err(SolutionError::WellDefinednessFailure {
                            x: *x2,
                            y: *y2,
                            x2: x,
                            y2: y,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        let entry = |a: usize, b: usize| table[a * k + b].expect("every class pair occurs").0;
        let sigma = (0..k)
            .map(|a| Permutation::from_images((0..k).map(|b| entry(a, b).0).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        let tau = (0..k)
            .map(|b| Permutation::from_images((0..k).map(|a| entry(a, b).1).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((Solution::new(sigma, tau)?, part))
    }

    /// The Yang–Baxter permutation group `⟨σ_x⟩`.
    pub fn yb_group(&self, limits: &Limits) -> Result<PermGroup, GroupError> {
        PermGroup::closure(self.size(), &self.sigma, limits.group_elements)
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sigma.iter().map(Permutation::to_cycles).collect();
        let t: Vec<String> = self.tau.iter().map(Permutation::to_cycles).collect();
        write!(f, "Solution[σ: {}; τ: {}]", s.join(", "), t.join(", "))
    }
}
