//! Transfer dynamic programming for the random-turns vicious walker
//! model: l walkers on the integers, one walker moves per tick, moves
//! onto occupied sites are forbidden, and every walker must return to
//! its starting position.

use crate::{Error, Result};
use std::collections::HashMap;

/// Weighted count of walker histories: walkers start at 0, -1, ...,
/// -(l-1); at tick k (1-based) exactly one walker steps up with weight
/// w_plus[k-1] or down with weight w_minus[k-1]; after n ticks all are
/// back at the start. Equals the Vandermonde-squared multiple integral
/// with the per-tick linear factors.
pub fn walker_count(l: usize, n: usize, w_plus: &[f64], w_minus: &[f64]) -> Result<f64> {
    if l == 0 || l > 4 || n > 12 {
        return Err(Error::Domain(format!(
            "walker DP limited to 1 <= l <= 4 and n <= 12, got l = {l}, n = {n}"
        )));
    }
    if w_plus.len() != n || w_minus.len() != n {
        return Err(Error::Domain(format!(
            "need one weight per tick: n = {n}, got {} up and {} down",
            w_plus.len(),
            w_minus.len()
        )));
    }
    let start: Vec<i64> = (0..l as i64).map(|j| -j).collect();
    let mut states: HashMap<Vec<i64>, f64> = HashMap::new();
    states.insert(start.clone(), 1.0);
    for k in 0..n {
        let mut next: HashMap<Vec<i64>, f64> = HashMap::new();
        for (pos, amp) in &states {
            for j in 0..l {
                for (step, w) in [(1i64, w_plus[k]), (-1i64, w_minus[k])] {
                    if w == 0.0 {
                        continue;
                    }
                    let target = pos[j] + step;
                    if pos.contains(&target) {
                        continue;
                    }
                    let mut np = pos.clone();
                    np[j] = target;
                    *next.entry(np).or_insert(0.0) += amp * w;
                }
            }
        }
        states = next;
    }
    Ok(states.get(&start).copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::periodic_quadrature;
    use num_complex::Complex64;

    /// The multiple-integral form: average of the per-tick factors times
    /// the squared Vandermonde over the torus, divided by l!.
    fn walker_integral(l: usize, w_plus: &[f64], w_minus: &[f64], grid: usize) -> f64 {
        let n = w_plus.len();
        let fact: f64 = (1..=l).map(|k| k as f64).product();
        let raw = periodic_quadrature(l, grid, &mut |theta: &[f64]| {
            let z: Vec<Complex64> = theta
                .iter()
                .map(|&t| Complex64::new(t.cos(), t.sin()))
                .collect();
            let mut prod = Complex64::new(1.0, 0.0);
            for k in 0..n {
                let mut tick = Complex64::new(0.0, 0.0);
                for zj in &z {
                    tick += w_plus[k] * zj + w_minus[k] * zj.conj();
                }
                prod *= tick;
            }
            let mut vdm = 1.0;
            for a in 0..l {
                for b in (a + 1)..l {
                    vdm *= (z[b] - z[a]).norm_sqr();
                }
            }
            prod.re * vdm
        });
        raw / (2.0 * std::f64::consts::PI).powi(l as i32) / fact
    }

    #[test]
    fn unit_single_walker() {
        assert_eq!(walker_count(1, 2, &[1.0; 2], &[1.0; 2]).unwrap(), 2.0);
        assert_eq!(walker_count(1, 3, &[1.0; 3], &[1.0; 3]).unwrap(), 0.0);
        assert_eq!(walker_count(1, 0, &[], &[]).unwrap(), 1.0);
    }

    #[test]
    fn unit_two_walkers_match_integral() {
        let got = walker_count(2, 4, &[1.0; 4], &[1.0; 4]).unwrap();
        let want = walker_integral(2, &[1.0; 4], &[1.0; 4], 64);
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        // Counting problems give non-negative integers.
        assert!((got - got.round()).abs() < 1e-12 && got >= 0.0);
    }

    #[test]
    fn unit_weighted_ticks_match_integral() {
        let wp = [1.0, 0.5, 0.3, 2.0];
        let wm = [0.7, 1.0, 2.0, 0.1];
        let got = walker_count(2, 4, &wp, &wm).unwrap();
        let want = walker_integral(2, &wp, &wm, 64);
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn unit_three_walkers_match_integral() {
        let wp = [1.0, 0.8, 1.2, 0.5];
        let wm = [0.9, 1.1, 0.4, 1.3];
        let got = walker_count(3, 4, &wp, &wm).unwrap();
        let want = walker_integral(3, &wp, &wm, 32);
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn unit_up_then_down_counts_bounded_row_tableaux() {
        // N up-only ticks then N down-only ticks count pairs of standard
        // tableaux with at most l rows.
        use crate::combinat::schur::num_standard_tableaux;
        use crate::combinat::Partition;
        use num::BigUint;
        for (l, n_half) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let n = 2 * n_half;
            let mut wp = vec![0.0; n];
            let mut wm = vec![0.0; n];
            for k in 0..n_half {
                wp[k] = 1.0;
                wm[n_half + k] = 1.0;
            }
            let got = walker_count(l, n, &wp, &wm).unwrap();
            let mut want = BigUint::from(0u32);
            for mu in Partition::all_of(n_half, n_half) {
                if mu.num_rows() <= l {
                    let f = num_standard_tableaux(&mu).unwrap();
                    want += &f * &f;
                }
            }
            let want: f64 = format!("{want}").parse().unwrap();
            assert_eq!(got, want, "l = {l}, N = {n_half}");
        }
    }
}
