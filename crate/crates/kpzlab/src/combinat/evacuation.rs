//! Schuetzenberger evacuation for standard and semistandard tableaux.

use super::StandardTableau;

/// Evacuation of a standard tableau: repeatedly delete the smallest entry,
/// slide the hole to a corner, and record that corner with decreasing
/// labels. An involution on standard tableaux of a fixed shape.
pub fn evacuation(t: &StandardTableau) -> StandardTableau {
    let n = t.size();
    let mut rows: Vec<Vec<usize>> = t.rows().to_vec();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); rows.len()];
    for label in (1..=n).rev() {
        // Delete the top-left entry and slide the hole outward, always
        // moving the smaller neighbour in.
        let (mut r, mut c) = (0usize, 0usize);
        loop {
            let right = rows[r].get(c + 1).copied();
            let below = if r + 1 < rows.len() {
                rows[r + 1].get(c).copied()
            } else {
                None
            };
            match (right, below) {
                (None, None) => break,
                (Some(_), None) => {
                    rows[r][c] = rows[r][c + 1];
                    c += 1;
                }
                (None, Some(_)) => {
                    rows[r][c] = rows[r + 1][c];
                    r += 1;
                }
                (Some(a), Some(b)) => {
                    if a < b {
                        rows[r][c] = a;
                        c += 1;
                    } else {
                        rows[r][c] = b;
                        r += 1;
                    }
                }
            }
        }
        rows[r].pop();
        if rows[r].is_empty() {
            rows.pop();
        }
        while out.len() <= r {
            out.push(Vec::new());
        }
        while out[r].len() <= c {
            out[r].push(0);
        }
        out[r][c] = label;
    }
    out.retain(|row| !row.is_empty());
    StandardTableau::from_rows_unchecked(out)
}

/// Evacuation of a semistandard tableau with entries in 1..=max_entry:
/// rotate the diagram by 180 degrees, complement each entry v to
/// max_entry + 1 - v, and rectify the resulting skew tableau by
/// jeu de taquin. Reverses the weight of the tableau.
pub fn ssyt_evacuation(rows: &[Vec<usize>], max_entry: usize) -> Vec<Vec<usize>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let nrows = rows.len();
    let width = rows[0].len();
    // Rotated, complemented grid: row r holds inner blanks then entries.
    let mut grid: Vec<Vec<Option<usize>>> = Vec::with_capacity(nrows);
    let mut inner: Vec<usize> = Vec::with_capacity(nrows);
    for r in 0..nrows {
        let src = &rows[nrows - 1 - r];
        let blank = width - src.len();
        let mut row: Vec<Option<usize>> = vec![None; blank];
        row.extend(src.iter().rev().map(|&v| Some(max_entry + 1 - v)));
        grid.push(row);
        inner.push(blank);
    }
    // Rectify: repeatedly pick an inner corner and slide the hole out.
    while inner.iter().any(|&b| b > 0) {
        let r0 = (0..nrows)
            .rev()
            .find(|&r| inner[r] > 0)
            .expect("non-empty inner shape");
        let c0 = inner[r0] - 1;
        let (mut r, mut c) = (r0, c0);
        loop {
            let right = grid[r].get(c + 1).copied().flatten();
            let below = if r + 1 < nrows {
                grid[r + 1].get(c).copied().flatten()
            } else {
                None
            };
            match (right, below) {
                (None, None) => break,
                (Some(a), None) => {
                    grid[r][c] = Some(a);
                    grid[r][c + 1] = None;
                    c += 1;
                }
                (None, Some(b)) => {
                    grid[r][c] = Some(b);
                    grid[r + 1][c] = None;
                    r += 1;
                }
                (Some(a), Some(b)) => {
                    // Ties slide up from below to keep columns strict.
                    if b <= a {
                        grid[r][c] = Some(b);
                        grid[r + 1][c] = None;
                        r += 1;
                    } else {
                        grid[r][c] = Some(a);
                        grid[r][c + 1] = None;
                        c += 1;
                    }
                }
            }
        }
        grid[r].truncate(c);
        inner[r0] = c0;
    }
    grid.iter()
        .filter(|row| !row.is_empty())
        .map(|row| row.iter().map(|v| v.expect("rectified cell")).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::rsk::rsk;
    use crate::combinat::Permutation;

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
    fn unit_worked_example() {
        let t = StandardTableau::new(vec![vec![1, 2], vec![3]]).unwrap();
        let e = evacuation(&t);
        assert_eq!(e.rows(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn unit_single_row_and_column_fixed() {
        let row = StandardTableau::new(vec![vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(evacuation(&row), row);
        let col = StandardTableau::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(evacuation(&col), col);
    }

    #[test]
    fn unit_evacuation_is_involution() {
        for n in 0..=6 {
            for p in all_perms(n) {
                let (pt, _) = rsk(&p);
                let e = evacuation(&pt);
                assert_eq!(e.shape(), pt.shape());
                assert_eq!(evacuation(&e), pt);
            }
        }
    }

    #[test]
    fn unit_evacuation_matches_central_image() {
        // Conjugating by the longest element acts on both tableaux by
        // evacuation.
        for n in 0..=6 {
            for p in all_perms(n) {
                let (pt, qt) = rsk(&p);
                let (pc, qc) = rsk(&p.central_image());
                assert_eq!(pc, evacuation(&pt));
                assert_eq!(qc, evacuation(&qt));
            }
        }
    }

    #[test]
    fn unit_central_class_is_self_evacuating_pairs() {
        use crate::combinat::SymmetryClass;
        for n in [2usize, 4, 6] {
            for p in all_perms(n) {
                let (pt, qt) = rsk(&p);
                let fixed = evacuation(&pt) == pt && evacuation(&qt) == qt;
                assert_eq!(SymmetryClass::Central.contains(&p), fixed, "{:?}", p);
            }
        }
    }

    #[test]
    fn unit_anti_diagonal_fixed_points_count_odd_rows() {
        // For permutations invariant under the anti-transpose, the number
        // of anti-diagonal fixed points equals the number of odd rows of
        // the insertion shape.
        for n in 1..=6 {
            for p in all_perms(n) {
                if p.anti_transpose() != p {
                    continue;
                }
                let shape = rsk(&p).0.shape();
                let odd_rows = shape.parts().iter().filter(|&&m| m % 2 == 1).count();
                assert_eq!(p.anti_fixed_points(), odd_rows, "{:?}", p);
            }
        }
    }

    #[test]
    fn unit_ssyt_evacuation_examples() {
        // Single row: complement and re-sort.
        let e = ssyt_evacuation(&[vec![1, 1, 2]], 2);
        assert_eq!(e, vec![vec![1, 2, 2]]);
        // Involution on a two-row semistandard tableau.
        let t = vec![vec![1, 1, 2], vec![2, 3]];
        let e1 = ssyt_evacuation(&t, 3);
        for r in 0..e1.len() {
            assert!(e1[r].windows(2).all(|w| w[0] <= w[1]));
            if r > 0 {
                for c in 0..e1[r].len() {
                    assert!(e1[r][c] > e1[r - 1][c]);
                }
            }
        }
        assert_eq!(ssyt_evacuation(&e1, 3), t);
        // Weight reversal: multiplicity of v in t equals multiplicity of
        // max + 1 - v in the evacuation.
        let count = |rows: &[Vec<usize>], v: usize| {
            rows.iter().flatten().filter(|&&x| x == v).count()
        };
        for v in 1..=3 {
            assert_eq!(count(&t, v), count(&e1, 4 - v));
        }
    }

    #[test]
    fn unit_ssyt_evacuation_agrees_on_standard_inputs() {
        for p in all_perms(5) {
            let (pt, _) = rsk(&p);
            let via_ssyt = ssyt_evacuation(pt.rows(), 5);
            assert_eq!(via_ssyt, evacuation(&pt).rows());
        }
    }
}
