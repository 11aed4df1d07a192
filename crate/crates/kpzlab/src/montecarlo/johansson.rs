//! Sampler for the lattice last-passage model: an (n+1) x (n+1) array of
//! independent geometric entries with Pr(w_ij = k) proportional to
//! (a_i b_j)^k, and the maximal weight of a down-right lattice path from
//! the top-left to the bottom-right corner.  The path weight coincides
//! with the first row of the shape that row-insertion assigns to the
//! array, which supplies an independent check of the recursion.

use super::{geometric, trial_rng};
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// One sampled last-passage instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JohanssonSample {
    /// The geometric entries, row-major, (n+1) rows of (n+1) entries.
    pub matrix: Vec<Vec<u64>>,
    /// Maximal down-right path weight from (0, 0) to (n, n).
    pub length: u64,
}

pub(crate) fn validate_johansson(n: usize, a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != n + 1 || b.len() != n + 1 {
        return Err(Error::Domain(format!(
            "rate vectors must have n + 1 = {} entries, got {} and {}",
            n + 1,
            a.len(),
            b.len()
        )));
    }
    for (name, v) in [("a", a), ("b", b)] {
        for &r in v {
            if !r.is_finite() || r < 0.0 {
                return Err(Error::Domain(format!(
                    "rates {name} must be finite and non-negative, got {r}"
                )));
            }
        }
    }
    for &ai in a {
        for &bj in b {
            if ai * bj >= 1.0 {
                return Err(Error::Domain(format!(
                    "geometric entries need a_i b_j < 1, got {}",
                    ai * bj
                )));
            }
        }
    }
    Ok(())
}

/// Samples one last-passage instance with entry parameters a_i b_j.
pub fn johansson_lpp(n: usize, a: &[f64], b: &[f64], seed: u64) -> Result<JohanssonSample> {
    validate_johansson(n, a, b)?;
    let mut rng = trial_rng(seed, 0);
    Ok(johansson_lpp_with(&mut rng, a, b))
}

pub(crate) fn johansson_lpp_with(rng: &mut ChaCha8Rng, a: &[f64], b: &[f64]) -> JohanssonSample {
    let matrix: Vec<Vec<u64>> = a
        .iter()
        .map(|&ai| b.iter().map(|&bj| geometric(rng, ai * bj)).collect())
        .collect();
    let length = last_passage(&matrix);
    JohanssonSample { matrix, length }
}

/// Maximal down-right path weight by the standard corner recursion.
pub fn last_passage(matrix: &[Vec<u64>]) -> u64 {
    let mut prev: Vec<u64> = Vec::new();
    for row in matrix {
        let mut cur = Vec::with_capacity(row.len());
        for (j, &w) in row.iter().enumerate() {
            let up = prev.get(j).copied().unwrap_or(0);
            let left = if j == 0 { 0 } else { cur[j - 1] };
            cur.push(w + up.max(left));
        }
        prev = cur;
    }
    prev.last().copied().unwrap_or(0)
}
