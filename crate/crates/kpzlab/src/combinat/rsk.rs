//! Robinson-Schensted-Knuth correspondence by row insertion.

use super::{Partition, Permutation, StandardTableau};
use crate::{Error, Result};

/// Insert v into an SSYT-style row structure by row bumping; returns the
/// (row, col) where the new cell was created.
fn insert(rows: &mut Vec<Vec<usize>>, v: usize) -> (usize, usize) {
    let mut v = v;
    let mut r = 0;
    loop {
        if r == rows.len() {
            rows.push(vec![v]);
            return (r, 0);
        }
        // Leftmost entry strictly greater than v gets bumped; weak rows
        // keep RSK valid for repeated entries as well.
        let i = rows[r].partition_point(|&x| x <= v);
        if i == rows[r].len() {
            rows[r].push(v);
            return (r, i);
        }
        std::mem::swap(&mut rows[r][i], &mut v);
        r += 1;
    }
}

/// RSK of a permutation: the pair (P, Q) of standard tableaux of equal
/// shape; the first-row length equals the longest increasing subsequence.
pub fn rsk(p: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut prow: Vec<Vec<usize>> = Vec::new();
    let mut qrow: Vec<Vec<usize>> = Vec::new();
    for (step, &v) in p.images().iter().enumerate() {
        let (r, _) = insert(&mut prow, v);
        if r == qrow.len() {
            qrow.push(Vec::new());
        }
        qrow[r].push(step + 1);
    }
    (
        StandardTableau::from_rows_unchecked(prow),
        StandardTableau::from_rows_unchecked(qrow),
    )
}

/// RSK of a non-negative integer matrix via its two-line array: columns
/// (i, j) repeated x[i][j] times in lexicographic order, i and j 1-based.
/// Returns the insertion and recording tableaux as raw weakly increasing
/// row structures (semi-standard), plus their common shape.
pub fn rsk_matrix(x: &[Vec<u64>]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>, Partition) {
    let mut prow: Vec<Vec<usize>> = Vec::new();
    let mut qrow: Vec<Vec<usize>> = Vec::new();
    for (i, row) in x.iter().enumerate() {
        for (j, &mult) in row.iter().enumerate() {
            for _ in 0..mult {
                let (r, _) = insert(&mut prow, j + 1);
                if r == qrow.len() {
                    qrow.push(Vec::new());
                }
                qrow[r].push(i + 1);
            }
        }
    }
    let shape = Partition::new(prow.iter().map(|r| r.len()).collect()).unwrap();
    (prow, qrow, shape)
}

/// Inverse RSK: reconstructs the permutation from (P, Q).
pub fn inverse_rsk(p: &StandardTableau, q: &StandardTableau) -> Result<Permutation> {
    if p.shape() != q.shape() {
        return Err(Error::Domain("P and Q must share a shape".into()));
    }
    let n = p.size();
    let mut rows: Vec<Vec<usize>> = p.rows().to_vec();
    let mut images = vec![0usize; n];
    for k in (1..=n).rev() {
        // Locate k in Q; it sits at the cell created at step k, which is a
        // removable corner of the current shape.
        let (mut r, c) = find_entry(q, k);
        let mut v = rows[r].remove(c);
        if rows[r].is_empty() {
            rows.pop();
        }
        // Reverse bumping: in each row above, the rightmost entry smaller
        // than v is the one that bumped it.
        while r > 0 {
            r -= 1;
            let i = rows[r].partition_point(|&x| x < v) - 1;
            std::mem::swap(&mut rows[r][i], &mut v);
        }
        images[k - 1] = v;
    }
    Permutation::new(images)
}

fn find_entry(t: &StandardTableau, v: usize) -> (usize, usize) {
    for (r, row) in t.rows().iter().enumerate() {
        if let Ok(c) = row.binary_search(&v) {
            return (r, c);
        }
    }
    unreachable!("entry {v} missing from standard tableau");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::lis::lis;

    fn perm(v: Vec<usize>) -> Permutation {
        Permutation::new(v).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (1..=n).collect();
        fn rec(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
            if k == v.len() {
                out.push(Permutation::new(v.clone()).unwrap());
                return;
            }
            for i in k..v.len() {
                v.swap(k, i);
                rec(v, k + 1, out);
                v.swap(k, i);
            }
        }
        rec(&mut v, 0, &mut out);
        out
    }

    #[test]
    fn unit_first_row_is_lis() {
        let p = perm(vec![5, 3, 7, 4, 1, 6, 2]);
        let (pt, qt) = rsk(&p);
        assert_eq!(pt.shape(), qt.shape());
        assert_eq!(pt.rows()[0].len(), 3);
        assert_eq!(lis(&p), 3);
    }

    #[test]
    fn unit_small_cases() {
        let (pt, _) = rsk(&perm(vec![1, 2, 3]));
        assert_eq!(pt.shape().parts(), &[3]);
        assert_eq!(pt.shape().alternating_sum(), 3);
        let (pt2, qt2) = rsk(&perm(vec![2, 1]));
        assert_eq!(pt2.shape().parts(), &[1, 1]);
        assert_eq!(pt2.shape().alternating_sum(), 0);
        assert_eq!(pt2, qt2); // involution
    }

    #[test]
    fn unit_round_trip_exhaustive() {
        for n in 0..=6 {
            for p in all_perms(n) {
                let (pt, qt) = rsk(&p);
                assert_eq!(inverse_rsk(&pt, &qt).unwrap(), p);
                assert_eq!(pt.rows()[..].len(), qt.rows().len());
            }
        }
    }

    #[test]
    fn unit_involutions_have_equal_tableaux_and_fixed_point_rule() {
        // For involutions P = Q, and the alternating shape sum counts the
        // fixed points (number of odd columns).
        for p in all_perms(6) {
            if !p.is_involution() {
                continue;
            }
            let (pt, qt) = rsk(&p);
            assert_eq!(pt, qt);
            assert_eq!(
                pt.shape().alternating_sum(),
                p.fixed_points() as i64,
                "fixed point rule fails for {:?}",
                p
            );
        }
    }

    #[test]
    fn unit_q_is_p_of_inverse() {
        for p in all_perms(5) {
            let (pt, qt) = rsk(&p);
            let (pi, qi) = rsk(&p.inverse());
            assert_eq!(pt, qi);
            assert_eq!(qt, pi);
        }
    }

    #[test]
    fn unit_reversal_conjugates_shape() {
        for n in 1..=8 {
            for p in all_perms(n) {
                let (pt, _) = rsk(&p);
                let (pr, _) = rsk(&p.reverse());
                assert_eq!(pr.shape(), pt.shape().conjugate());
            }
        }
    }

    #[test]
    fn unit_first_row_matches_lis_exhaustive() {
        for n in 1..=9 {
            for p in all_perms(n) {
                let (pt, _) = rsk(&p);
                assert_eq!(pt.rows()[0].len(), lis(&p));
            }
        }
    }

    #[test]
    fn unit_matrix_rsk_shape() {
        // The permutation matrix of p gives the same shape as rsk(p).
        let p = perm(vec![3, 1, 2]);
        let mut x = vec![vec![0u64; 3]; 3];
        for j in 1..=3 {
            x[j - 1][p.image(j) - 1] = 1;
        }
        let (_, _, shape) = rsk_matrix(&x);
        assert_eq!(shape, rsk(&p).0.shape());
        // A matrix with repeats: first row of P is weakly increasing.
        let y = vec![vec![2, 1], vec![0, 3]];
        let (prow, qrow, shape2) = rsk_matrix(&y);
        assert_eq!(shape2.size(), 6);
        assert!(prow[0].windows(2).all(|w| w[0] <= w[1]));
        assert!(qrow[0].windows(2).all(|w| w[0] <= w[1]));
        for rows in [&prow, &qrow] {
            for r in 1..rows.len() {
                for c in 0..rows[r].len() {
                    assert!(rows[r][c] > rows[r - 1][c], "columns must be strict");
                }
            }
        }
    }
}
