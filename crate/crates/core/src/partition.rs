use std::fmt;

use thiserror::Error;

/// A partition of `{0, ..., n-1}` stored as a class label per point.
///
/// Labels are canonical: classes are numbered `0..k` in order of their least
/// element, so two partitions are equal iff their label vectors are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    class_of: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionParseError {
    #[error("expected {expected} labels, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("point {0} is out of range")]
    OutOfRange(usize),
    #[error("point {0} appears in more than one block")]
    Repeated(usize),
    #[error("point {0} is missing from the blocks")]
    Missing(usize),
    #[error("malformed partition: {0}")]
    Syntax(String),
}

impl Partition {
    /// Normalizes arbitrary labels into canonical form.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l.clone()).or_insert(next)
            })
            .collect();
        Partition { class_of }
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Partition {
            class_of: vec![0; n],
        }
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |&m| m + 1)
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Classes in label order, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes()];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    /// All classes have the same size.
    pub fn is_equitable(&self) -> bool {
        let sizes = self.class_sizes();
        sizes.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_classes() <= 1
    }

    /// `self` is finer than or equal to `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![None; self.num_classes()];
        self.class_of
            .iter()
            .zip(&other.class_of)
            .all(|(&a, &b)| *image[a].get_or_insert(b) == b)
    }

    /// Parses either whitespace-separated labels (`1 2 1 2`) or blocks of
    /// 1-based points (`{1,3,5}{2,4,6}`).
    pub fn parse(text: &str, n: usize) -> Result<Self, PartitionParseError> {
        let text = text.trim();
        if text.starts_with('{') {
            let mut labels = vec![None; n];
            let mut block = 0;
            for chunk in text.split('}').map(str::trim).filter(|c| !c.is_empty()) {
                let body = chunk
                    .strip_prefix('{')
                    .ok_or_else(|| PartitionParseError::Syntax(chunk.to_string()))?;
                for tok in body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                {
                    let p: usize = tok
                        .parse()
                        .map_err(|_| PartitionParseError::Syntax(tok.to_string()))?;
                    if p == 0 || p > n {
                        return Err(PartitionParseError::OutOfRange(p));
                    }
                    if labels[p - 1].replace(block).is_some() {
                        return Err(PartitionParseError::Repeated(p));
                    }
                }
                block += 1;
            }
            let labels = labels
                .iter()
                .enumerate()
                .map(|(i, l)| l.ok_or(PartitionParseError::Missing(i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Partition::from_labels(&labels))
        } else {
            let labels = text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| PartitionParseError::Syntax(t.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if labels.len() != n {
                return Err(PartitionParseError::WrongLength {
                    expected: n,
                    found: labels.len(),
                });
            }
            Ok(Partition::from_labels(&labels))
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for class in self.classes() {
            let points: Vec<String> = class.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "{{{}}}", points.join(","))?;
        }
        Ok(())
    }
}

/// Union-find over `0..n` used to grow congruences.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn from_partition(p: &Partition) -> Self {
        let mut uf = UnionFind::new(p.len());
        for class in p.classes() {
            for w in class.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so roots are least elements
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn to_partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_canonical() {
        let p = Partition::from_labels(&[7, 3, 7, 3, 7, 3]);
        assert_eq!(p.labels(), &[0, 1, 0, 1, 0, 1]);
        assert_eq!(p.to_string(), "{1,3,5}{2,4,6}");
        assert_eq!(p.class_sizes(), vec![3, 3]);
        assert!(p.is_equitable());
        assert!(!p.is_discrete() && !p.is_total());
    }

    #[test]
    fn parses_both_forms() {
        let a = Partition::parse("{1,3,5}{2,4,6}", 6).unwrap();
        let b = Partition::parse("1 2 1 2 1 2", 6).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            Partition::parse("{1,3}{2,3}", 3),
            Err(PartitionParseError::Repeated(3))
        );
        assert_eq!(
            Partition::parse("{1,3}", 3),
            Err(PartitionParseError::Missing(2))
        );
        assert!(Partition::parse("1 2", 3).is_err());
    }

    #[test]
    fn refinement_and_union_find() {
        let fine = Partition::from_labels(&[0, 1, 2, 2]);
        let coarse = Partition::from_labels(&[0, 0, 1, 1]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::discrete(4).refines(&fine));
        let mut uf = UnionFind::from_partition(&fine);
        uf.union(0, 1);
        assert_eq!(uf.to_partition(), coarse);
    }
}
