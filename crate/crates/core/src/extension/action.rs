use super::dynamical::{numeric_labels, DynamicalCocycle};
use super::ExtensionError;
use crate::cycle_set::CycleSet;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionAxiom {
    /// `x(s·t) = xs·xt`; witness `(x,s,t)`.
    Distributes,
    /// `(x·y)(xs) = (y·x)(ys)`; witness `(x,y,s)`.
    Compatible,
    /// `s ↦ xs` is a bijection; witness `(x,s,s')` with `xs = xs'`.
    Bijective,
}

/// An action of a cycle set `X` on a cycle set `S` by automorphisms,
/// compatible with the operation of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSetAction {
    base: CycleSet,
    module: CycleSet,
    act: Vec<Permutation>,
}

impl CycleSetAction {
    /// `act[x][s]` is `xs`.
    pub fn new(
        base: CycleSet,
        module: CycleSet,
        act: Vec<Vec<usize>>,
    ) -> Result<Self, ExtensionError> {
        let (n, m) = (base.size(), module.size());
        if act.len() != n {
            return Err(ExtensionError::Shape {
                expected: n,
                found: act.len(),
            });
        }
        let mut perms = Vec::with_capacity(n);
        for (x, row) in act.into_iter().enumerate() {
            if row.len() != m || row.iter().any(|&v| v >= m) {
                return Err(ExtensionError::Shape {
                    expected: m,
                    found: row.len(),
                });
            }
            let mut seen = vec![None; m];
            for (s, &v) in row.iter().enumerate() {
                if let Some(first) = seen[v] {
                    return Err(ExtensionError::ActionAxiomFailure {
                        axiom: ActionAxiom::Bijective,
                        witness: vec![x, first, s],
                    });
                }
                seen[v] = Some(s);
            }
            perms.push(Permutation::from_images(row)?);
        }
        for (x, g) in perms.iter().enumerate() {
            for s in 0..m {
                for t in 0..m {
                    if g.apply(module.op(s, t)) != module.op(g.apply(s), g.apply(t)) {
                        return Err(ExtensionError::ActionAxiomFailure {
                            axiom: ActionAxiom::Distributes,
                            witness: vec![x, s, t],
                        });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for s in 0..m {
                    let lhs = perms[base.op(x, y)].apply(perms[x].apply(s));
                    let rhs = perms[base.op(y, x)].apply(perms[y].apply(s));
                    if lhs != rhs {
                        return Err(ExtensionError::ActionAxiomFailure {
                            axiom: ActionAxiom::Compatible,
                            witness: vec![x, y, s],
                        });
                    }
                }
            }
        }
        Ok(CycleSetAction { base, module, act: perms })
    }

    /// `xs = s` for all `x`.
    pub fn trivial(base: CycleSet, module: CycleSet) -> Self {
        let m = module.size();
        let act = vec![Permutation::identity(m); base.size()];
        CycleSetAction { base, module, act }
    }

    pub fn base(&self) -> &CycleSet {
        &self.base
    }

    pub fn module(&self) -> &CycleSet {
        &self.module
    }

    pub fn act(&self, x: usize, s: usize) -> usize {
        self.act[x].apply(s)
    }

    /// `α_{x,y}(s,t) = (x·y)s · (y·x)t`.
    pub fn cocycle(&self) -> Result<DynamicalCocycle, ExtensionError> {
        let (base, module) = (&self.base, &self.module);
        let m = module.size();
        DynamicalCocycle::from_fn(base.clone(), numeric_labels(m, 1), |x, y, s| {
            let left = self.act(base.op(x, y), s);
            let images = (0..m)
                .map(|t| module.op(left, self.act(base.op(y, x), t)))
                .collect();
            Permutation::from_images(images).expect("rows of S and the action are bijective")
        })
    }

    /// The extension `S ⋊ X` with
    /// `(s,x)·(t,y) = ((x·y)s · (y·x)t, x·y)`.
    pub fn semidirect_product(&self) -> Result<CycleSet, ExtensionError> {
        Ok(self.cocycle()?.build_extension())
    }
}
