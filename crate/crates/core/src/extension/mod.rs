//! Dynamical cocycles and the extensions `S ×_α X` they define.
//!
//! Points of an extension are numbered label-major: `(s, x)` has index
//! `s·|X| + x`.

mod abelian;
mod action;
mod cohomology;
mod covering;
mod dynamical;
mod linalg;

use std::fmt;

use thiserror::Error;

use crate::cycle_set::CycleSetError;
use crate::perm::PermError;

pub use abelian::{is_prime, AbelianCocycle, AbelianCocycleSpace};
pub use action::{ActionAxiom, CycleSetAction};
pub use cohomology::{cohomologous, is_projection_compatible_isomorphism};
pub use covering::Covering;
pub use dynamical::{
    validate_constant_cocycle, validate_dynamical_cocycle, ConstantCocycleReport,
    ConstantViolation, DynamicalCocycle, DynamicalCocycleReport, DynamicalViolation,
};
pub use linalg::{nullspace_mod_p, rref_mod_p};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("not a dynamical cocycle: {0}")]
    InvalidCocycle(DynamicalCocycleReport),
    #[error("not a constant cocycle: {0}")]
    InvalidConstant(ConstantCocycleReport),
    #[error("label set must be nonempty and duplicate-free")]
    BadLabels,
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue {value} at ({},{}) is not below the modulus", .x + 1, .y + 1)]
    ResidueOutOfRange { x: usize, y: usize, value: u32 },
    #[error(
        "abelian cocycle condition fails at (x,y,z)=({},{},{})",
        .x + 1, .y + 1, .z + 1
    )]
    AbelianCondition { x: usize, y: usize, z: usize },
    #[error("action axiom {axiom} fails at {}", one_based(.witness))]
    ActionAxiomFailure {
        axiom: ActionAxiom,
        witness: Vec<usize>,
    },
    #[error("covering: {0}")]
    BadCovering(String),
    #[error("cocycles live over different bases or label sets")]
    Mismatch,
    #[error("search space of {leaves} leaves exceeds the limit {limit}")]
    SizeLimit { leaves: u128, limit: u128 },
    #[error(transparent)]
    CycleSet(#[from] CycleSetError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn one_based(points: &[usize]) -> String {
    let parts: Vec<String> = points.iter().map(|p| (p + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for ActionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionAxiom::Distributes => "(1) x(s·t) = xs·xt",
            ActionAxiom::Compatible => "(2) (x·y)(xs) = (y·x)(ys)",
            ActionAxiom::Bijective => "(3) s ↦ xs bijective",
        })
    }
}
