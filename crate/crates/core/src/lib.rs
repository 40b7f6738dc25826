//! Finite involutive nondegenerate set-theoretic solutions of the
//! Yang–Baxter equation, computed through cycle sets.

pub mod catalog;
pub mod cycle_set;
pub mod document;
pub mod extension;
pub mod format;
pub mod group;
pub mod limits;
pub mod partition;
pub mod selftest;
pub mod perm;
pub mod solution;

pub use cycle_set::{CycleSet, CycleSetError, MplKind, MplResult};
pub use extension::{DynamicalCocycle, ExtensionError};
pub use group::{exact_isomorphic, GroupError, GroupFingerprint, PermGroup};
pub use limits::Limits;
pub use partition::Partition;
pub use perm::{PermError, Permutation};
pub use solution::{Solution, SolutionError};
