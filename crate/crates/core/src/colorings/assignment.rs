//! Maximum-weight perfect matchings on small square matrices.
//!
//! Both solvers return the optimal value together with the lexicographically
//! smallest optimal permutation `perm`, where row `r` is matched to column
//! `perm[r]`.

/// Tries every permutation in lexicographic order, keeping the first optimum.
pub fn max_assignment_brute_force(w: &[Vec<i64>]) -> (i64, Vec<usize>) {
    let n = w.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let value = |p: &[usize]| p.iter().enumerate().map(|(r, &c)| w[r][c]).sum::<i64>();
    let mut best = (value(&perm), perm.clone());
    while next_permutation(&mut perm) {
        let v = value(&perm);
        if v > best.0 {
            best = (v, perm.clone());
        }
    }
    best
}

/// Rearranges into the next permutation in lexicographic order; `false` once
/// the last one has been passed.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("p[i + 1] > p[i]");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Hungarian method, O(n³). Returns the optimum and some optimal permutation.
pub fn max_assignment(w: &[Vec<i64>]) -> (i64, Vec<usize>) {
    let n = w.len();
    if n == 0 {
        return (0, Vec::new());
    }
    let top = w.iter().flatten().copied().max().unwrap_or(0);
    // Minimize top - w over 1-indexed potentials.
    let cost = |r: usize, c: usize| top - w[r - 1][c - 1];
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0usize; n];
    for j in 1..=n {
        perm[owner[j] - 1] = j - 1;
    }
    let value = perm.iter().enumerate().map(|(r, &c)| w[r][c]).sum();
    (value, perm)
}

/// Hungarian optimum, then the lexicographically smallest optimal
/// permutation: fix rows in order, taking the smallest column that still
/// allows the optimum on the remaining rows.
pub fn max_assignment_lexicographic(w: &[Vec<i64>]) -> (i64, Vec<usize>) {
    let n = w.len();
    let (best, _) = max_assignment(w);
    let mut perm = Vec::with_capacity(n);
    let mut free: Vec<usize> = (0..n).collect();
    let mut fixed = 0i64;
    for r in 0..n {
        let pick = free
            .iter()
            .position(|&c| {
                let rest: Vec<usize> = free.iter().copied().filter(|&x| x != c).collect();
                let sub: Vec<Vec<i64>> = (r + 1..n)
                    .map(|rr| rest.iter().map(|&cc| w[rr][cc]).collect())
                    .collect();
                fixed + w[r][c] + max_assignment(&sub).0 == best
            })
            .expect("some column extends the optimum");
        let c = free.remove(pick);
        fixed += w[r][c];
        perm.push(c);
    }
    (best, perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn hungarian_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..500 {
            let n = 1 + trial % 7;
            // Small ranges force many ties.
            let w: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random_range(0..4)).collect())
                .collect();
            let brute = max_assignment_brute_force(&w);
            assert_eq!(max_assignment(&w).0, brute.0);
            assert_eq!(max_assignment_lexicographic(&w), brute);
        }
    }

    #[test]
    fn all_zero_prefers_identity() {
        let w = vec![vec![0; 4]; 4];
        assert_eq!(max_assignment_lexicographic(&w).1, vec![0, 1, 2, 3]);
    }
}
