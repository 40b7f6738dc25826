use super::dynamical::DynamicalCocycle;
use super::ExtensionError;
use crate::cycle_set::all_permutations;
use crate::limits::Limits;
use crate::perm::Permutation;

fn leaves(n: usize, m: usize) -> u128 {
    let fact: u128 = (1..=m as u128).product();
    fact.checked_pow(n as u32).unwrap_or(u128::MAX)
}

fn check_pair(
    a: &DynamicalCocycle,
    b: &DynamicalCocycle,
    limits: &Limits,
) -> Result<(), ExtensionError> {
    if a.base() != b.base() || a.fiber_size() != b.fiber_size() {
        return Err(ExtensionError::Mismatch);
    }
    let count = leaves(a.base().size(), a.fiber_size());
    if count > limits.cohomology_leaves {
        return Err(ExtensionError::SizeLimit {
            leaves: count,
            limit: limits.cohomology_leaves,
        });
    }
    Ok(())
}

/// Searches `γ: X → Sym(S)` with
/// `γ_{x·y}(α_{x,y}(s,t)) = β_{x,y}(γ_x(s), γ_y(t))`, in lexicographic
/// order; returns the least witness.
pub fn cohomologous(
    a: &DynamicalCocycle,
    b: &DynamicalCocycle,
    limits: &Limits,
) -> Result<Option<Vec<Permutation>>, ExtensionError> {
    check_pair(a, b, limits)?;
    let (n, m) = (a.base().size(), a.fiber_size());
    let candidates = all_permutations(m);
    let mut chosen: Vec<usize> = Vec::with_capacity(n);

    // Every (x,y) whose three indices are assigned and one of them is `k`.
    let consistent = |chosen: &[usize], k: usize| {
        let g = |x: usize| &candidates[chosen[x]];
        for x in 0..=k {
            for y in 0..=k {
                let xy = a.base().op(x, y);
                if xy > k || (x != k && y != k && xy != k) {
                    continue;
                }
                for s in 0..m {
                    for t in 0..m {
                        if g(xy)[a.apply(x, y, s, t)] != b.apply(x, y, g(x)[s], g(y)[t]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };

    fn dfs(
        chosen: &mut Vec<usize>,
        n: usize,
        width: usize,
        consistent: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        let k = chosen.len();
        if k == n {
            return true;
        }
        for c in 0..width {
            chosen.push(c);
            if consistent(chosen, k) && dfs(chosen, n, width, consistent) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    if dfs(&mut chosen, n, candidates.len(), &consistent) {
        Ok(Some(
            chosen
                .iter()
                .map(|&c| Permutation::from_images(candidates[c].clone()).unwrap())
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

/// Whether some bijection `F: S ×_α X → S ×_β X` with `p_β ∘ F = p_α` is a
/// cycle set homomorphism. Works on the extension tables directly.
pub fn is_projection_compatible_isomorphism(
    a: &DynamicalCocycle,
    b: &DynamicalCocycle,
    limits: &Limits,
) -> Result<bool, ExtensionError> {
    check_pair(a, b, limits)?;
    let (n, m) = (a.base().size(), a.fiber_size());
    let (ea, eb) = (a.build_extension(), b.build_extension());
    let size = n * m;
    let candidates = all_permutations(m);
    // Image of each point under F, or None while its fiber is unassigned.
    let mut map: Vec<Option<usize>> = vec![None; size];

    fn search(
        x: usize,
        n: usize,
        candidates: &[Vec<usize>],
        map: &mut Vec<Option<usize>>,
        ea: &crate::CycleSet,
        eb: &crate::CycleSet,
    ) -> bool {
        if x == n {
            return true;
        }
        for g in candidates {
            for (s, &gs) in g.iter().enumerate() {
                map[s * n + x] = Some(gs * n + x);
            }
            let ok = (0..map.len()).all(|p| {
                (0..map.len()).all(|q| match (map[p], map[q], map[ea.op(p, q)]) {
                    (Some(fp), Some(fq), Some(fpq)) => fpq == eb.op(fp, fq),
                    _ => true,
                })
            });
            if ok && search(x + 1, n, candidates, map, ea, eb) {
                return true;
            }
        }
        for s in 0..candidates[0].len() {
            map[s * n + x] = None;
        }
        false
    }

    Ok(search(0, n, &candidates, &mut map, &ea, &eb))
}
