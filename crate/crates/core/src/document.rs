//! Validated contents of a text document.

use thiserror::Error;

use crate::catalog::Fixture;
use crate::cycle_set::{validate_cycle_set, CycleSet};
use crate::extension::{validate_dynamical_cocycle, AbelianCocycle, Covering, DynamicalCocycle};
use crate::format::{parse_document, FormatError, Section};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::solution::{validate_solution, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Format(#[from] FormatError),
    /// The section parsed but fails its validator.
    #[error("line {line}: invalid {kind}:\n{report}")]
    Invalid {
        line: usize,
        kind: &'static str,
        report: String,
    },
    #[error("line {line}: {kind} section needs a base cycle set")]
    MissingBase { line: usize, kind: &'static str },
    #[error("line {line}: expected size {expected}, found {found}")]
    SizeMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("document has no {0} section")]
    Missing(&'static str),
}

impl DocumentError {
    /// Parsed fine but describes an invalid object.
    pub fn is_invalid(&self) -> bool {
        matches!(self, DocumentError::Invalid { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    CycleSet(CycleSet),
    Solution(Solution),
    DCocycle(DynamicalCocycle),
    ACocycle(AbelianCocycle),
    /// Action rows are validated against a base and module by the caller.
    Action { n: usize, m: usize, rows: Vec<Vec<usize>> },
    Partition {
        partition: Partition,
        labels: Option<Vec<String>>,
    },
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::CycleSet(_) => "cycleset",
            Item::Solution(_) => "solution",
            Item::DCocycle(_) => "dcocycle",
            Item::ACocycle(_) => "acocycle",
            Item::Action { .. } => "action",
            Item::Partition { .. } => "partition",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Item::CycleSet(x) => x.size(),
            Item::Solution(s) => s.size(),
            Item::DCocycle(c) => c.base().size() * c.fiber_size(),
            Item::ACocycle(c) => c.base().size() * c.modulus() as usize,
            Item::Action { n, .. } => *n,
            Item::Partition { partition, .. } => partition.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<(usize, Item)>,
}

fn invalid(line: usize, kind: &'static str, report: impl ToString) -> DocumentError {
    DocumentError::Invalid {
        line,
        kind,
        report: report.to_string(),
    }
}

fn perms(rows: Vec<Vec<usize>>) -> Vec<Permutation> {
    rows.into_iter()
        .map(|r| Permutation::from_images(r).expect("validated rows are bijective"))
        .collect()
}

impl Document {
    /// Parses and validates every section. Cocycle sections use the nearest
    /// preceding cycle set or solution as base, falling back to `base`.
    pub fn load(text: &str, base: Option<&CycleSet>) -> Result<Document, DocumentError> {
        let mut items = Vec::new();
        let mut current: Option<CycleSet> = base.cloned();
        for section in parse_document(text)? {
            let line = section.line();
            let kind = section.kind();
            let need_base = |current: &Option<CycleSet>, n: usize| -> Result<CycleSet, DocumentError> {
                let b = current.clone().ok_or(DocumentError::MissingBase { line, kind })?;
                if b.size() != n {
                    return Err(DocumentError::SizeMismatch {
                        line,
                        expected: b.size(),
                        found: n,
                    });
                }
                Ok(b)
            };
            let item = match section {
                Section::CycleSet { rows, .. } => {
                    let report = validate_cycle_set(&rows);
                    if !report.is_valid() {
                        return Err(invalid(line, kind, report));
                    }
                    let x = CycleSet::from_table(rows).expect("validated");
                    current = Some(x.clone());
                    Item::CycleSet(x)
                }
                Section::Solution { sigma, tau, .. } => {
                    let report = validate_solution(&sigma, &tau);
                    if !report.is_valid() {
                        return Err(invalid(line, kind, report));
                    }
                    let s = Solution::new(perms(sigma), perms(tau)).expect("validated");
                    current = Some(s.to_cycle_set());
                    Item::Solution(s)
                }
                Section::DCocycle { n, labels, rows, .. } => {
                    let b = need_base(&current, n)?;
                    let report = validate_dynamical_cocycle(&b, labels.len(), &rows);
                    if !report.is_valid() {
                        return Err(invalid(line, kind, report));
                    }
                    let c = DynamicalCocycle::new(b, labels, perms(rows))
                        .map_err(|e| invalid(line, kind, e))?;
                    Item::DCocycle(c)
                }
                Section::ACocycle { p, matrix, .. } => {
                    let b = need_base(&current, matrix.len())?;
                    Item::ACocycle(
                        AbelianCocycle::new(b, p, matrix).map_err(|e| invalid(line, kind, e))?,
                    )
                }
                Section::Action { n, m, rows, .. } => Item::Action { n, m, rows },
                Section::Partition { partition, labels, .. } => Item::Partition { partition, labels },
            };
            items.push((line, item));
        }
        Ok(Document { items })
    }

    /// The first cycle set or solution, as a cycle set.
    pub fn cycle_set(&self) -> Result<CycleSet, DocumentError> {
        self.items
            .iter()
            .find_map(|(_, item)| match item {
                Item::CycleSet(x) => Some(x.clone()),
                Item::Solution(s) => Some(s.to_cycle_set()),
                _ => None,
            })
            .ok_or(DocumentError::Missing("cycleset or solution"))
    }

    pub fn solution(&self) -> Result<Solution, DocumentError> {
        self.items
            .iter()
            .find_map(|(_, item)| match item {
                Item::Solution(s) => Some(s.clone()),
                Item::CycleSet(x) => Some(Solution::from_cycle_set(x)),
                _ => None,
            })
            .ok_or(DocumentError::Missing("cycleset or solution"))
    }

    /// The first cocycle, abelian ones embedded as dynamical cocycles.
    pub fn dynamical_cocycle(&self) -> Result<DynamicalCocycle, DocumentError> {
        self.items
            .iter()
            .find_map(|(_, item)| match item {
                Item::DCocycle(c) => Some(c.clone()),
                Item::ACocycle(c) => Some(c.to_dynamical()),
                _ => None,
            })
            .ok_or(DocumentError::Missing("dcocycle or acocycle"))
    }

    pub fn partition(&self) -> Result<(Partition, Option<Vec<String>>), DocumentError> {
        self.items
            .iter()
            .find_map(|(_, item)| match item {
                Item::Partition { partition, labels } => Some((partition.clone(), labels.clone())),
                _ => None,
            })
            .ok_or(DocumentError::Missing("partition"))
    }

    /// Reassembles the fixture a document encodes: a covering when a
    /// partition follows the cycle set, otherwise the last cocycle or the
    /// first cycle set or solution.
    pub fn to_fixture(&self) -> Result<Fixture, DocumentError> {
        if let Some((line, Item::Partition { partition, labels })) =
            self.items.iter().find(|(_, i)| matches!(i, Item::Partition { .. }))
        {
            let total = self.cycle_set()?;
            let mut cov = Covering::from_partition(total, partition)
                .map_err(|e| invalid(*line, "partition", e))?;
            if let Some(labels) = labels {
                let fibers = cov.fibers().to_vec();
                cov = cov
                    .with_fibers(fibers, labels.clone())
                    .map_err(|e| invalid(*line, "partition", e))?;
            }
            return Ok(Fixture::Cover(cov));
        }
        for (_, item) in self.items.iter().rev() {
            match item {
                Item::DCocycle(c) => return Ok(Fixture::DCocycle(c.clone())),
                Item::ACocycle(c) => return Ok(Fixture::ACocycle(c.clone())),
                _ => {}
            }
        }
        match self.items.first() {
            Some((_, Item::CycleSet(x))) => Ok(Fixture::CycleSet(x.clone())),
            Some((_, Item::Solution(s))) => Ok(Fixture::Solution(s.clone())),
            _ => Err(DocumentError::Missing("cycleset or solution")),
        }
    }
}
