use super::dynamical::{numeric_labels, DynamicalCocycle};
use super::ExtensionError;
use crate::cycle_set::CycleSet;
use crate::partition::Partition;
use crate::perm::Permutation;

/// A surjective homomorphism `p: X → Y` with all fibers of size `|S|`,
/// together with bijections `f_y: p⁻¹(y) → S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    total: CycleSet,
    base: CycleSet,
    proj: Vec<usize>,
    /// `fibers[y][s]` is the point `f_y⁻¹(s)`.
    fibers: Vec<Vec<usize>>,
    labels: Vec<String>,
}

fn bad(message: impl Into<String>) -> ExtensionError {
    ExtensionError::BadCovering(message.into())
}

impl Covering {
    pub fn new(
        total: CycleSet,
        base: CycleSet,
        proj: Vec<usize>,
        fibers: Vec<Vec<usize>>,
        labels: Vec<String>,
    ) -> Result<Self, ExtensionError> {
        let (nx, ny, m) = (total.size(), base.size(), labels.len());
        if proj.len() != nx || proj.iter().any(|&y| y >= ny) {
            return Err(bad("projection has the wrong shape"));
        }
        if !total.is_homomorphism(&proj, &base) {
            return Err(bad("projection is not a homomorphism"));
        }
        if fibers.len() != ny {
            return Err(bad(format!("expected {ny} fibers, found {}", fibers.len())));
        }
        let mut seen = vec![false; nx];
        for (y, fiber) in fibers.iter().enumerate() {
            if fiber.len() != m {
                return Err(bad(format!("fiber over {} does not have size {m}", y + 1)));
            }
            for &x in fiber {
                if x >= nx || seen[x] || proj[x] != y {
                    return Err(bad(format!(
                        "fiber bijection over {} is not onto its preimage",
                        y + 1
                    )));
                }
                seen[x] = true;
            }
        }
        Ok(Covering { total, base, proj, fibers, labels })
    }

    /// The quotient map by an equitable congruence, fibers listed in
    /// increasing order and labelled `1..m`.
    pub fn from_partition(total: CycleSet, partition: &Partition) -> Result<Self, ExtensionError> {
        if partition.len() != total.size() || !partition.is_equitable() {
            return Err(bad("partition is not equitable on the total space"));
        }
        let base = total.quotient(partition)?;
        let fibers = partition.classes();
        let m = fibers[0].len();
        Covering::new(
            total,
            base,
            partition.labels().to_vec(),
            fibers,
            numeric_labels(m, 1),
        )
    }

    /// Replaces the fiber bijections, `fibers[y][s] = f_y⁻¹(s)`.
    pub fn with_fibers(
        self,
        fibers: Vec<Vec<usize>>,
        labels: Vec<String>,
    ) -> Result<Self, ExtensionError> {
        Covering::new(self.total, self.base, self.proj, fibers, labels)
    }

    pub fn total(&self) -> &CycleSet {
        &self.total
    }

    pub fn base(&self) -> &CycleSet {
        &self.base
    }

    pub fn projection(&self) -> &[usize] {
        &self.proj
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn partition(&self) -> Partition {
        Partition::from_labels(&self.proj)
    }

    /// `α_{y,z}(s,t) = f_{y·z}(f_y⁻¹(s) · f_z⁻¹(t))`, together with the
    /// isomorphism `x ↦ (f_{p(x)}(x), p(x))` from the total space onto the
    /// extension.
    pub fn extract_cocycle(&self) -> Result<(DynamicalCocycle, Permutation), ExtensionError> {
        let (nx, ny, m) = (self.total.size(), self.base.size(), self.labels.len());
        let mut label_of = vec![0; nx];
        for fiber in &self.fibers {
            for (s, &x) in fiber.iter().enumerate() {
                label_of[x] = s;
            }
        }
        let cocycle = DynamicalCocycle::from_fn(self.base.clone(), self.labels.clone(), |y, z, s| {
            let images = (0..m)
                .map(|t| label_of[self.total.op(self.fibers[y][s], self.fibers[z][t])])
                .collect();
            Permutation::from_images(images).expect("rows of the total space are bijective")
        })?;
        let iso = Permutation::from_images(
            (0..nx).map(|x| label_of[x] * ny + self.proj[x]).collect(),
        )?;
        debug_assert!(self.total.is_homomorphism(iso.images(), &cocycle.build_extension()));
        Ok((cocycle, iso))
    }
}
