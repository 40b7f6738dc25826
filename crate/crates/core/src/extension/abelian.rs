//! Cocycles with values in `Z/pZ`, acting by translation on the fiber.

use super::dynamical::{numeric_labels, DynamicalCocycle};
use super::linalg::nullspace_mod_p;
use super::ExtensionError;
use crate::cycle_set::CycleSet;
use crate::perm::Permutation;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_prime(p: u32) -> Result<(), ExtensionError> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(ExtensionError::NotPrime(p as u64))
    }
}

/// A matrix `f: X × X → Z/pZ` with
/// `f(x,z) + f(x·y,x·z) = f(y,z) + f(y·x,y·z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCocycle {
    base: CycleSet,
    p: u32,
    f: Vec<Vec<u32>>,
}

/// First `(x,y,z)` at which the condition fails.
fn first_failure(base: &CycleSet, p: u32, f: &[Vec<u32>]) -> Option<(usize, usize, usize)> {
    let n = base.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = f[x][z] + f[base.op(x, y)][base.op(x, z)];
                let rhs = f[y][z] + f[base.op(y, x)][base.op(y, z)];
                if lhs % p != rhs % p {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

impl AbelianCocycle {
    pub fn new(base: CycleSet, p: u32, f: Vec<Vec<u32>>) -> Result<Self, ExtensionError> {
        check_prime(p)?;
        let n = base.size();
        if f.len() != n {
            return Err(ExtensionError::Shape {
                expected: n,
                found: f.len(),
            });
        }
        for (x, row) in f.iter().enumerate() {
            if row.len() != n {
                return Err(ExtensionError::Shape {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some((y, &value)) = row.iter().enumerate().find(|(_, &v)| v >= p) {
                return Err(ExtensionError::ResidueOutOfRange { x, y, value });
            }
        }
        if let Some((x, y, z)) = first_failure(&base, p, &f) {
            return Err(ExtensionError::AbelianCondition { x, y, z });
        }
        Ok(AbelianCocycle { base, p, f })
    }

    pub fn base(&self) -> &CycleSet {
        &self.base
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.f
    }

    pub fn value(&self, x: usize, y: usize) -> u32 {
        self.f[x][y]
    }

    /// `f(x,x) = 0` for every `x`, i.e. the extension of a square-free base
    /// stays square-free.
    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.base.size()).all(|x| self.f[x][x] == 0)
    }

    /// `α_{x,y}(s,t) = t + f(x,y)`, labels `0..p-1`.
    pub fn to_dynamical(&self) -> DynamicalCocycle {
        let p = self.p as usize;
        let translations: Vec<Permutation> = (0..p)
            .map(|c| Permutation::from_images((0..p).map(|t| (t + c) % p).collect()).unwrap())
            .collect();
        DynamicalCocycle::from_fn(self.base.clone(), numeric_labels(p, 0), |x, y, _| {
            translations[self.f[x][y] as usize].clone()
        })
        .expect("abelian cocycles embed as dynamical cocycles")
    }

    /// The cycle set on `Z/pZ × X` with `(a,x)·(b,y) = (b + f(x,y), x·y)`,
    /// point `(a,x)` numbered `a·n + x`.
    pub fn extension(&self) -> CycleSet {
        let n = self.base.size();
        let p = self.p as usize;
        let rows = (0..p * n)
            .map(|i| {
                let x = i % n;
                (0..p * n)
                    .map(|j| {
                        let (b, y) = (j / n, j % n);
                        ((b + self.f[x][y] as usize) % p) * n + self.base.op(x, y)
                    })
                    .collect()
            })
            .collect();
        CycleSet::from_table(rows).expect("extension by an abelian cocycle is a cycle set")
    }
}

/// The solution space of the abelian cocycle condition over a base, as a
/// reduced row-echelon basis of flattened matrices (unknown `x·n + y`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCocycleSpace {
    base: CycleSet,
    p: u32,
    basis: Vec<Vec<u32>>,
}

impl AbelianCocycleSpace {
    fn equations(base: &CycleSet, p: u32) -> Vec<Vec<u32>> {
        let n = base.size();
        let mut rows = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut row = vec![0u32; n * n];
                    let mut add = |i: usize, c: u32| row[i] = (row[i] + c) % p;
                    add(x * n + z, 1);
                    add(base.op(x, y) * n + base.op(x, z), 1);
                    add(y * n + z, p - 1);
                    add(base.op(y, x) * n + base.op(y, z), p - 1);
                    if row.iter().any(|&v| v != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    pub fn solve(base: &CycleSet, p: u32) -> Result<Self, ExtensionError> {
        check_prime(p)?;
        let n = base.size();
        let basis = nullspace_mod_p(&Self::equations(base, p), n * n, p);
        Ok(AbelianCocycleSpace { base: base.clone(), p, basis })
    }

    /// The subspace with `f(x,x) = 0` for all `x`.
    pub fn solve_with_zero_diagonal(base: &CycleSet, p: u32) -> Result<Self, ExtensionError> {
        check_prime(p)?;
        let n = base.size();
        let mut rows = Self::equations(base, p);
        for x in 0..n {
            let mut row = vec![0u32; n * n];
            row[x * n + x] = 1;
            rows.push(row);
        }
        let basis = nullspace_mod_p(&rows, n * n, p);
        Ok(AbelianCocycleSpace { base: base.clone(), p, basis })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_vectors(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn to_matrix(&self, v: &[u32]) -> Vec<Vec<u32>> {
        v.chunks(self.base.size().max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn basis(&self) -> Vec<AbelianCocycle> {
        self.basis
            .iter()
            .map(|v| AbelianCocycle {
                base: self.base.clone(),
                p: self.p,
                f: self.to_matrix(v),
            })
            .collect()
    }

    /// `Σ cᵢ·bᵢ` for coefficients `c` in basis order.
    pub fn combination(&self, coefficients: &[u32]) -> AbelianCocycle {
        let n = self.base.size();
        let mut v = vec![0u32; n * n];
        for (c, b) in coefficients.iter().zip(&self.basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = ((*vi as u64 + *c as u64 * *bi as u64) % self.p as u64) as u32;
            }
        }
        AbelianCocycle {
            base: self.base.clone(),
            p: self.p,
            f: self.to_matrix(&v),
        }
    }

    /// Membership by reduction against the basis.
    pub fn contains(&self, f: &[Vec<u32>]) -> bool {
        let n = self.base.size();
        let mut v: Vec<u32> = f.iter().flatten().map(|&a| a % self.p).collect();
        if v.len() != n * n {
            return false;
        }
        for b in &self.basis {
            let pivot = b.iter().position(|&c| c != 0).expect("basis vectors are nonzero");
            let factor = v[pivot] as u64;
            if factor == 0 {
                continue;
            }
            let p = self.p as u64;
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = ((*vi as u64 + p * p - factor * *bi as u64) % p) as u32;
            }
        }
        v.iter().all(|&c| c == 0)
    }
}
