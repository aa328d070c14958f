//! Permutations of `{0, .., n-1}` that fix the base point `0`.

use alloc::vec::Vec;

/// All permutations of `0..n` fixing `0`, in lexicographic order.
pub fn pointed_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current[1..]) {
            break;
        }
    }
    out
}

/// Advance to the next lexicographic permutation; false when wrapped around.
pub fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    inv
}

/// Every function `0..m -> 0..n` sending `0` to `0`, lexicographically.
pub fn pointed_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 || n == 0 {
        return out;
    }
    let mut current = alloc::vec![0usize; m];
    loop {
        out.push(current.clone());
        let mut k = m - 1;
        loop {
            if k == 0 {
                return out;
            }
            current[k] += 1;
            if current[k] < n {
                break;
            }
            current[k] = 0;
            k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(pointed_permutations(1).len(), 1);
        assert_eq!(pointed_permutations(4).len(), 6);
        assert_eq!(pointed_functions(3, 3).len(), 9);
        assert_eq!(pointed_functions(1, 5).len(), 1);
        assert!(pointed_permutations(4).iter().all(|p| p[0] == 0));
    }

    #[test]
    fn inverse_roundtrip() {
        for p in pointed_permutations(5) {
            let q = invert(&p);
            assert!((0..5).all(|i| q[p[i]] == i));
        }
    }
}
