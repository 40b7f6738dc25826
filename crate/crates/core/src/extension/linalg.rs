//! Gaussian elimination over `Z/pZ`, `p` prime.

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduces `rows` to reduced row-echelon form in place, pivoting on the
/// first nonzero entry of each column, and drops zero rows. Returns the
/// pivot columns.
pub fn rref_mod_p(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c] as u64, p64);
        for v in rows[r].iter_mut() {
            *v = ((*v as u64) * inv % p64) as u32;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let factor = rows[i][c] as u64;
            for j in 0..ncols {
                let sub = factor * rows[r][j] as u64 % p64;
                rows[i][j] = ((rows[i][j] as u64 + p64 - sub) % p64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}` in reduced row-echelon form.
pub fn nullspace_mod_p(matrix: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = matrix.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let pivots = rref_mod_p(&mut rows, p);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = (p - row[free] % p) % p;
        }
        basis.push(v);
    }
    if !basis.is_empty() {
        rref_mod_p(&mut basis, p);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_over_f3() {
        let mut m = vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 1]];
        let pivots = rref_mod_p(&mut m, 3);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(m, vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn nullspace_vectors_are_solutions() {
        let a = vec![vec![1, 1, 0, 1], vec![0, 1, 1, 1]];
        let basis = nullspace_mod_p(&a, 4, 2);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &a {
                let dot: u32 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(dot % 2, 0);
            }
        }
        assert_eq!(nullspace_mod_p(&[vec![0, 0]], 2, 5).len(), 2);
        assert_eq!(inv_mod(3, 7), 5);
    }
}
