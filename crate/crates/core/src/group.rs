//! Explicit subgroups of `Sym(n)`: closure, structural invariants and an
//! exact isomorphism test for small orders.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::limits::Limits;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("group order {order} exceeds the isomorphism search limit {limit}")]
    SizeLimit { order: usize, limit: usize },
}

/// A subgroup of `Sym(degree)` with its full element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    pub order_histogram: BTreeMap<u64, usize>,
    pub center_order: usize,
    pub derived_order: usize,
}

impl PermGroup {
    /// Breadth-first closure of `generators` under composition.
    pub fn closure(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<PermGroup, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let next = e.compose_unchecked(g);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup {
            degree,
            elements,
            generators: generators.to_vec(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose_unchecked(b) == b.compose_unchecked(a))
        })
    }

    /// The image of the group under `p ↦ g p g⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gi = g.inverse();
        let conj = |p: &Permutation| g.compose_unchecked(p).compose_unchecked(&gi);
        let mut elements: Vec<Permutation> = self.elements.iter().map(conj).collect();
        elements.sort();
        PermGroup {
            degree: self.degree,
            elements,
            generators: self.generators.iter().map(conj).collect(),
        }
    }

    fn center_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|z| {
                self.generators
                    .iter()
                    .all(|g| z.compose_unchecked(g) == g.compose_unchecked(z))
            })
            .count()
    }

    /// Commutator subgroup, as the normal closure of the generator
    /// commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let commutator = |a: &Permutation, b: &Permutation| {
            a.inverse()
                .compose_unchecked(&b.inverse())
                .compose_unchecked(a)
                .compose_unchecked(b)
        };
        let mut gens: Vec<Permutation> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = commutator(a, b);
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        let cap = self.order().max(1);
        loop {
            let d = PermGroup::closure(self.degree, &gens, cap).expect("subgroup fits");
            let mut extra = Vec::new();
            for g in &self.generators {
                let gi = g.inverse();
                for h in &gens {
                    let c = gi.compose_unchecked(h).compose_unchecked(g);
                    if !d.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return d;
            }
            gens.extend(extra);
        }
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut order_histogram = BTreeMap::new();
        for e in &self.elements {
            *order_histogram.entry(e.order()).or_insert(0) += 1;
        }
        GroupFingerprint {
            order: self.order(),
            abelian: self.is_abelian(),
            order_histogram,
            center_order: self.center_order(),
            derived_order: self.derived_subgroup().order(),
        }
    }
}

/// Multiplication table of a small group on element indices.
struct GroupTable {
    n: usize,
    mul: Vec<usize>,
    identity: usize,
    orders: Vec<u64>,
}

impl GroupTable {
    fn new(g: &PermGroup) -> Self {
        let index: HashMap<&Permutation, usize> =
            g.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = g.order();
        let mut mul = vec![0; n * n];
        for (i, a) in g.elements.iter().enumerate() {
            for (j, b) in g.elements.iter().enumerate() {
                mul[i * n + j] = index[&a.compose_unchecked(b)];
            }
        }
        GroupTable {
            n,
            mul,
            identity: index[&Permutation::identity(g.degree)],
            orders: g.elements.iter().map(Permutation::order).collect(),
        }
    }

    fn index_of(&self, g: &PermGroup, p: &Permutation) -> usize {
        g.elements.binary_search(p).expect("element of the group")
    }

    fn subgroup_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut count = 1;
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let next = self.mul[e * self.n + g];
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    queue.push_back(next);
                }
            }
        }
        count
    }
}

/// Greedily keeps the generators that enlarge the subgroup built so far.
fn reduced_generators(g: &PermGroup, table: &GroupTable) -> Vec<usize> {
    let mut candidates: Vec<usize> = g
        .generators
        .iter()
        .map(|p| table.index_of(g, p))
        .collect();
    if candidates.is_empty() {
        candidates = (0..table.n).collect();
    }
    // high-order generators first tend to give shorter lists
    candidates.sort_by_key(|&i| std::cmp::Reverse(table.orders[i]));
    let mut chosen = Vec::new();
    let mut size = 1;
    for c in candidates {
        chosen.push(c);
        let s = table.subgroup_size(&chosen);
        if s > size {
            size = s;
        } else {
            chosen.pop();
        }
        if size == table.n {
            break;
        }
    }
    chosen
}

struct IsoSearch<'a> {
    g: &'a GroupTable,
    h: &'a GroupTable,
    gens: Vec<usize>,
    images: Vec<usize>,
}

impl IsoSearch<'_> {
    /// The assignment `gens[..k] ↦ images[..k]` extends to an injective
    /// homomorphism on the subgroup those generators span.
    fn prefix_ok(&self, k: usize) -> bool {
        let (g, h) = (self.g, self.h);
        let mut map = vec![usize::MAX; g.n];
        let mut used = vec![false; h.n];
        map[g.identity] = h.identity;
        used[h.identity] = true;
        let mut queue = VecDeque::from([g.identity]);
        while let Some(e) = queue.pop_front() {
            for i in 0..k {
                let next = g.mul[e * g.n + self.gens[i]];
                let img = h.mul[map[e] * h.n + self.images[i]];
                if map[next] == usize::MAX {
                    if used[img] {
                        return false;
                    }
                    used[img] = true;
                    map[next] = img;
                    queue.push_back(next);
                } else if map[next] != img {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&mut self, k: usize) -> bool {
        if k == self.gens.len() {
            return true;
        }
        let want = self.g.orders[self.gens[k]];
        for cand in 0..self.h.n {
            if self.h.orders[cand] != want {
                continue;
            }
            self.images.push(cand);
            if self.prefix_ok(k + 1) && self.extend(k + 1) {
                return true;
            }
            self.images.pop();
        }
        false
    }
}

/// Decides `G ≅ H` by searching for generator images that extend to a
/// bijective homomorphism.
pub fn exact_isomorphic(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<bool, GroupError> {
    for order in [g.order(), h.order()] {
        if order > limits.group_iso_order {
            return Err(GroupError::SizeLimit {
                order,
                limit: limits.group_iso_order,
            });
        }
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    let (tg, th) = (GroupTable::new(g), GroupTable::new(h));
    let mut hist_g = tg.orders.clone();
    let mut hist_h = th.orders.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(false);
    }
    let gens = reduced_generators(g, &tg);
    let mut search = IsoSearch {
        g: &tg,
        h: &th,
        gens,
        images: Vec::new(),
    };
    Ok(search.extend(0))
}

/// Reference groups built from fixed generators.
pub mod named {
    use super::PermGroup;
    use crate::perm::Permutation;

    pub const NAMES: &[&str] = &["trivial", "C2", "C3", "C4", "C8", "C2^2", "C2^3", "D4", "D4xD4"];

    pub fn group(name: &str) -> Option<PermGroup> {
        let (degree, gens): (usize, &[&str]) = match name {
            "trivial" => (1, &[]),
            "C2" => (2, &["(12)"]),
            "C3" => (3, &["(123)"]),
            "C4" => (4, &["(1234)"]),
            "C8" => (8, &["(12345678)"]),
            "C2^2" => (4, &["(12)", "(34)"]),
            "C2^3" => (6, &["(12)", "(34)", "(56)"]),
            "D4" => (4, &["(1234)", "(13)"]),
            "D4xD4" => (8, &["(1234)", "(13)", "(5678)", "(57)"]),
            _ => return None,
        };
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|g| Permutation::parse(g, degree).expect("fixed generator"))
            .collect();
        Some(PermGroup::closure(degree, &gens, usize::MAX).expect("small group"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn small_closures() {
        let g = PermGroup::closure(3, &[perm("(12)", 3)], 100).unwrap();
        assert_eq!(g.order(), 2);
        let g = PermGroup::closure(3, &[perm("(123)", 3)], 100).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(PermGroup::closure(4, &[], 10).unwrap().order(), 1);
        assert_eq!(
            PermGroup::closure(4, &[perm("(12)", 3)], 10),
            Err(GroupError::DegreeMismatch {
                expected: 4,
                found: 3
            })
        );
        let s4 = [perm("(1234)", 4), perm("(12)", 4)];
        assert_eq!(
            PermGroup::closure(4, &s4, 10),
            Err(GroupError::CapExceeded { cap: 10 })
        );
        assert_eq!(PermGroup::closure(4, &s4, 24).unwrap().order(), 24);
    }

    #[test]
    fn fingerprints_of_references() {
        let t = named::group("trivial").unwrap().fingerprint();
        assert_eq!(
            (t.order, t.abelian, t.center_order, t.derived_order),
            (1, true, 1, 1)
        );
        assert_eq!(t.order_histogram, BTreeMap::from([(1, 1)]));
        let d4 = named::group("D4").unwrap().fingerprint();
        assert_eq!(
            (d4.order, d4.abelian, d4.center_order, d4.derived_order),
            (8, false, 2, 2)
        );
        assert_eq!(d4.order_histogram, BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
    }

    #[test]
    fn isomorphism_basics() {
        let limits = Limits::default();
        let d4 = named::group("D4").unwrap();
        let c8 = named::group("C8").unwrap();
        assert!(exact_isomorphic(&d4, &d4, &limits).unwrap());
        assert!(!exact_isomorphic(&d4, &c8, &limits).unwrap());
        let other_d4 = PermGroup::closure(4, &[perm("(12)", 4), perm("(1324)", 4)], 100).unwrap();
        assert!(exact_isomorphic(&d4, &other_d4, &limits).unwrap());
        let c4 = named::group("C4").unwrap();
        let v4 = named::group("C2^2").unwrap();
        assert!(!exact_isomorphic(&c4, &v4, &limits).unwrap());
        let s4 = PermGroup::closure(4, &[perm("(1234)", 4), perm("(12)", 4)], 100).unwrap();
        let tight = Limits {
            group_iso_order: 8,
            ..Limits::default()
        };
        assert_eq!(
            exact_isomorphic(&s4, &s4, &tight),
            Err(GroupError::SizeLimit { order: 24, limit: 8 })
        );
    }
}
