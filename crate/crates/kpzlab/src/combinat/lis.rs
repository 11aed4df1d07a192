//! Longest increasing subsequence by patience sorting.

use super::Permutation;

/// Length of the longest strictly increasing subsequence, O(n log n).
pub fn lis(p: &Permutation) -> usize {
    let mut tops: Vec<usize> = Vec::new();
    for &v in p.images() {
        let i = tops.partition_point(|&t| t < v);
        if i == tops.len() {
            tops.push(v);
        } else {
            tops[i] = v;
        }
    }
    tops.len()
}

/// The patience piles: reading left to right, each value joins the first
/// pile whose top exceeds it, else starts a new pile. Each pile is a
/// decreasing subsequence led by its leftmost digit, and the pile count
/// equals the longest increasing subsequence length.
pub fn patience_layers(p: &Permutation) -> Vec<Vec<usize>> {
    let mut piles: Vec<Vec<usize>> = Vec::new();
    for &v in p.images() {
        let i = piles.partition_point(|pile| *pile.last().unwrap() < v);
        if i == piles.len() {
            piles.push(vec![v]);
        } else {
            piles[i].push(v);
        }
    }
    piles
}

/// Longest chain of points strictly increasing in both coordinates;
/// quadratic DP used as an oracle and for weighted chain problems.
pub fn longest_chain_dp(points: &[(f64, f64)]) -> usize {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = pts.len();
    let mut best = vec![1usize; n];
    let mut ans = 0;
    for i in 0..n {
        for j in 0..i {
            if pts[j].0 < pts[i].0 && pts[j].1 < pts[i].1 {
                best[i] = best[i].max(best[j] + 1);
            }
        }
        ans = ans.max(best[i]);
    }
    ans
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: Vec<usize>) -> Permutation {
        Permutation::new(v).unwrap()
    }

    fn lis_quadratic(p: &Permutation) -> usize {
        let v = p.images();
        let n = v.len();
        let mut best = vec![1usize; n];
        let mut ans = 0;
        for i in 0..n {
            for j in 0..i {
                if v[j] < v[i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
            ans = ans.max(best[i]);
        }
        ans
    }

    #[test]
    fn unit_worked_example() {
        let p = perm(vec![5, 3, 7, 4, 1, 6, 2]);
        assert_eq!(lis(&p), 3);
        assert_eq!(
            patience_layers(&p),
            vec![vec![5, 3, 1], vec![7, 4, 2], vec![6]]
        );
    }

    #[test]
    fn unit_monotone_cases() {
        for n in 1..8 {
            let id = perm((1..=n).collect());
            assert_eq!(lis(&id), n);
            let rev = perm((1..=n).rev().collect());
            assert_eq!(lis(&rev), 1);
        }
        assert_eq!(lis(&perm(vec![])), 0);
    }

    #[test]
    fn unit_layer_count_equals_lis_exhaustive() {
        // All permutations of size 6.
        let mut v = [1, 2, 3, 4, 5, 6];
        permute_all(&mut v, 0, &mut |w| {
            let p = perm(w.to_vec());
            assert_eq!(patience_layers(&p).len(), lis(&p));
            assert_eq!(lis(&p), lis_quadratic(&p));
        });
    }

    fn permute_all(v: &mut [usize; 6], k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute_all(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn unit_chain_dp_matches_lis() {
        let p = perm(vec![5, 3, 7, 4, 1, 6, 2]);
        let pts: Vec<(f64, f64)> = p
            .images()
            .iter()
            .enumerate()
            .map(|(i, &v)| ((i + 1) as f64, v as f64))
            .collect();
        assert_eq!(longest_chain_dp(&pts), 3);
    }

    proptest! {
        #[test]
        fn prop_lis_matches_quadratic_oracle(seed_vec in proptest::collection::vec(0u32..1000, 0..12)) {
            // Build a permutation from the ranks of random values.
            let mut idx: Vec<usize> = (0..seed_vec.len()).collect();
            idx.sort_by_key(|&i| (seed_vec[i], i));
            let mut images = vec![0usize; seed_vec.len()];
            for (rank, &i) in idx.iter().enumerate() {
                images[i] = rank + 1;
            }
            let p = perm(images);
            prop_assert_eq!(lis(&p), lis_quadratic(&p));
        }

        #[test]
        fn prop_layers_partition_values(seed_vec in proptest::collection::vec(0u32..1000, 1..10)) {
            let mut idx: Vec<usize> = (0..seed_vec.len()).collect();
            idx.sort_by_key(|&i| (seed_vec[i], i));
            let mut images = vec![0usize; seed_vec.len()];
            for (rank, &i) in idx.iter().enumerate() {
                images[i] = rank + 1;
            }
            let p = perm(images);
            let layers = patience_layers(&p);
            let mut all: Vec<usize> = layers.iter().flatten().copied().collect();
            all.sort();
            prop_assert_eq!(all, (1..=p.n()).collect::<Vec<_>>());
            for layer in &layers {
                prop_assert!(layer.windows(2).all(|w| w[0] > w[1]), "piles must decrease");
            }
        }
    }
}
