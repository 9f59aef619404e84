//! Small combinatorial helpers used by several modules.

/// All k-element subsets of `pool`, each in the order induced by `pool`.
pub(crate) fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = pool.len();
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        // rightmost position that can still be advanced
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All orderings of `items` (Heap's algorithm). Intended for small inputs.
pub(crate) fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    let mut xs = items.to_vec();
    let n = xs.len();
    let mut out = Vec::new();
    let mut c = vec![0usize; n];
    out.push(xs.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                xs.swap(0, i);
            } else {
                xs.swap(c[i], i);
            }
            out.push(xs.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        let pool: Vec<usize> = (1..=6).collect();
        assert_eq!(combinations(&pool, 2).len(), 15);
        assert_eq!(combinations(&pool, 4).len(), 15);
        assert_eq!(combinations(&pool, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(&pool, 7).is_empty());
    }

    #[test]
    fn combinations_are_sorted_and_distinct() {
        let pool: Vec<usize> = (1..=7).collect();
        let combos = combinations(&pool, 3);
        assert_eq!(combos.len(), 35);
        for c in &combos {
            assert!(c.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations_of(&[1, 2, 3]).len(), 6);
        assert_eq!(permutations_of(&[1, 2, 3, 4]).len(), 24);
        let perms = permutations_of(&[5, 6]);
        assert!(perms.contains(&vec![5, 6]) && perms.contains(&vec![6, 5]));
    }
}
