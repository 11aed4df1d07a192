//! Schur polynomial evaluation and tableau enumeration.

use super::evacuation::{evacuation, ssyt_evacuation};
use super::{Partition, StandardTableau};
use crate::{Error, Result};
use num::BigUint;

/// Cap on cells for semistandard enumeration.
const SSYT_CELL_BOUND: usize = 10;
/// Cap on cells for standard enumeration.
const SYT_CELL_BOUND: usize = 12;

fn check_bound(cells: usize, bound: usize, what: &str) -> Result<()> {
    if cells > bound {
        return Err(Error::Domain(format!(
            "{what} enumeration limited to {bound} cells, got {cells}"
        )));
    }
    Ok(())
}

/// All semistandard tableaux of the shape with entries in 1..=max_entry.
fn ssyt_enumerate(shape: &Partition, max_entry: usize) -> Vec<Vec<Vec<usize>>> {
    let parts = shape.parts();
    let mut out = Vec::new();
    if parts.is_empty() {
        out.push(Vec::new());
        return out;
    }
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    fn rec(
        parts: &[usize],
        max_entry: usize,
        rows: &mut Vec<Vec<usize>>,
        r: usize,
        c: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if r == parts.len() {
            out.push(rows.clone());
            return;
        }
        let (nr, nc) = if c + 1 < parts[r] { (r, c + 1) } else { (r + 1, 0) };
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(rows[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(rows[r - 1][c] + 1);
        }
        for v in lo..=max_entry {
            rows[r].push(v);
            rec(parts, max_entry, rows, nr, nc, out);
            rows[r].pop();
        }
    }
    rec(parts, max_entry, &mut rows, 0, 0, &mut out);
    out
}

/// Schur polynomial s_shape(weights) summed over semistandard tableaux
/// with entries in 1..=weights.len().
pub fn schur_eval(shape: &Partition, weights: &[f64]) -> Result<f64> {
    check_bound(shape.size(), SSYT_CELL_BOUND, "semistandard tableau")?;
    let mut total = 0.0;
    for t in ssyt_enumerate(shape, weights.len()) {
        let mut term = 1.0;
        for &v in t.iter().flatten() {
            term *= weights[v - 1];
        }
        total += term;
    }
    Ok(total)
}

/// All standard tableaux of the shape, by successive corner placement.
pub fn standard_tableaux(shape: &Partition) -> Result<Vec<StandardTableau>> {
    check_bound(shape.size(), SYT_CELL_BOUND, "standard tableau")?;
    let parts = shape.parts().to_vec();
    let n = shape.size();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    let mut out = Vec::new();
    fn rec(
        parts: &[usize],
        n: usize,
        next: usize,
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if next > n {
            out.push(StandardTableau::from_rows_unchecked(
                rows.iter().filter(|r| !r.is_empty()).cloned().collect(),
            ));
            return;
        }
        for r in 0..parts.len() {
            let filled = rows[r].len();
            if filled >= parts[r] {
                continue;
            }
            if r > 0 && rows[r - 1].len() <= filled {
                continue;
            }
            rows[r].push(next);
            rec(parts, n, next + 1, rows, out);
            rows[r].pop();
        }
    }
    rec(&parts, n, 1, &mut rows, &mut out);
    Ok(out)
}

/// Number of standard tableaux of the shape, by direct enumeration.
pub fn num_standard_tableaux(shape: &Partition) -> Result<BigUint> {
    Ok(BigUint::from(standard_tableaux(shape)?.len()))
}

/// Number of standard tableaux fixed by evacuation.
pub fn self_dual_tableaux_count(shape: &Partition) -> Result<BigUint> {
    let count = standard_tableaux(shape)?
        .iter()
        .filter(|t| &evacuation(t) == *t)
        .count();
    Ok(BigUint::from(count))
}

/// Self-dual Schur polynomial: sum over semistandard tableaux with
/// entries in 1..=2n fixed by evacuation, weighted by q_j to the
/// multiplicity of j for j <= n (the top half mirrors the bottom half).
pub fn schur_self_dual_eval(shape: &Partition, q: &[f64]) -> Result<f64> {
    check_bound(shape.size(), SSYT_CELL_BOUND, "semistandard tableau")?;
    let n = q.len();
    let mut total = 0.0;
    for t in ssyt_enumerate(shape, 2 * n) {
        if ssyt_evacuation(&t, 2 * n) != t {
            continue;
        }
        let mut term = 1.0;
        for &v in t.iter().flatten() {
            if v <= n {
                term *= q[v - 1];
            }
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(parts: Vec<usize>) -> Partition {
        Partition::new(parts).unwrap()
    }

    fn hook_length_count(shape: &Partition) -> BigUint {
        let parts = shape.parts();
        let conj = shape.conjugate();
        let mut num = BigUint::from(1u32);
        for k in 1..=shape.size() {
            num *= BigUint::from(k);
        }
        let mut den = BigUint::from(1u32);
        for (r, &len) in parts.iter().enumerate() {
            for c in 0..len {
                let hook = (len - c) + (conj.part(c) - r) - 1;
                den *= BigUint::from(hook);
            }
        }
        num / den
    }

    #[test]
    fn unit_schur_single_cell() {
        let s = schur_eval(&shape(vec![1]), &[2.0, 3.0]).unwrap();
        assert_eq!(s, 5.0);
    }

    #[test]
    fn unit_schur_column_two() {
        // s_(1,1)(w1,w2) = w1 w2, so the balanced coefficient is 1.
        let s = schur_eval(&shape(vec![1, 1]), &[1.0, 1.0]).unwrap();
        assert_eq!(s, 1.0);
        let t = schur_eval(&shape(vec![2]), &[1.0, 1.0]).unwrap();
        assert_eq!(t, 3.0); // 11, 12, 22
    }

    #[test]
    fn unit_distinct_entry_count_is_standard_count() {
        // The coefficient of w_1 ... w_N in s_shape counts standard
        // tableaux: semistandard with every entry used exactly once.
        for parts in [vec![2, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1]] {
            let sh = shape(parts);
            let n = sh.size();
            let distinct = ssyt_enumerate(&sh, n)
                .into_iter()
                .filter(|t| {
                    let mut seen = vec![false; n + 1];
                    t.iter().flatten().for_each(|&v| seen[v] = true);
                    seen[1..].iter().all(|&b| b)
                })
                .count();
            assert_eq!(BigUint::from(distinct), num_standard_tableaux(&sh).unwrap());
        }
    }

    #[test]
    fn unit_standard_counts_match_hook_lengths() {
        for parts in [
            vec![3],
            vec![2, 1],
            vec![1, 1, 1],
            vec![4, 2],
            vec![3, 2, 1],
            vec![2, 2, 2],
            vec![5, 3, 1],
        ] {
            let sh = shape(parts);
            assert_eq!(
                num_standard_tableaux(&sh).unwrap(),
                hook_length_count(&sh),
                "{:?}",
                sh
            );
        }
    }

    #[test]
    fn unit_squared_counts_sum_to_factorial() {
        // RSK bijectivity: sum of squared tableau counts over shapes of n
        // equals n!.
        for n in 1..=6u32 {
            let mut total = BigUint::from(0u32);
            for sh in Partition::all_of(n as usize, n as usize) {
                let f = num_standard_tableaux(&sh).unwrap();
                total += &f * &f;
            }
            let fact = (1..=n).fold(BigUint::from(1u32), |a, k| a * BigUint::from(k));
            assert_eq!(total, fact, "n = {n}");
        }
    }

    #[test]
    fn unit_self_dual_counts() {
        // Shapes of 2: both tableaux are self-dual.
        assert_eq!(
            self_dual_tableaux_count(&shape(vec![2])).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            self_dual_tableaux_count(&shape(vec![1, 1])).unwrap(),
            BigUint::from(1u32)
        );
        // Shapes of 4.
        assert_eq!(
            self_dual_tableaux_count(&shape(vec![4])).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            self_dual_tableaux_count(&shape(vec![3, 1])).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            self_dual_tableaux_count(&shape(vec![2, 2])).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn unit_self_dual_squares_sum_to_class_size() {
        // Central-symmetric permutations of S_{2n} number 2^n n! and RSK
        // restricts to a bijection with pairs of self-dual tableaux.
        for n in 1..=3usize {
            let mut total = BigUint::from(0u32);
            for sh in Partition::all_of(2 * n, 2 * n) {
                let f = self_dual_tableaux_count(&sh).unwrap();
                total += &f * &f;
            }
            let expect = BigUint::from(2u32).pow(n as u32)
                * (1..=n as u32).fold(BigUint::from(1u32), |a, k| a * BigUint::from(k));
            assert_eq!(total, expect, "n = {n}");
        }
    }

    #[test]
    fn unit_self_dual_balanced_coefficient_is_standard_count() {
        // The coefficient of q_1 ... q_n in the self-dual Schur sum picks
        // out tableaux using each of 1..n exactly once; by the mirror
        // property those are exactly the self-dual standard tableaux.
        for parts in [vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]] {
            let sh = shape(parts);
            let n = sh.size() / 2;
            let balanced = ssyt_enumerate(&sh, 2 * n)
                .into_iter()
                .filter(|t| ssyt_evacuation(t, 2 * n) == *t)
                .filter(|t| {
                    (1..=n).all(|j| t.iter().flatten().filter(|&&v| v == j).count() == 1)
                })
                .count();
            assert_eq!(
                BigUint::from(balanced),
                self_dual_tableaux_count(&sh).unwrap(),
                "{sh:?}"
            );
        }
    }

    #[test]
    fn unit_bounds_enforced() {
        assert!(schur_eval(&shape(vec![11]), &[1.0]).is_err());
        assert!(standard_tableaux(&shape(vec![13])).is_err());
    }
}
