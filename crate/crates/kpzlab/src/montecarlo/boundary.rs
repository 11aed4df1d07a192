//! Sampler for the boundary-source model: a Poisson configuration in the
//! unit square decorated with extra Poisson points on the bottom and left
//! edges and a geometric weight at the origin.  The observable is the
//! heaviest monotone path from the origin corner, where edge points at
//! equal height (or equal abscissa) may all be collected in passing.

use super::{check_rate, geometric, poisson, trial_rng, unit};
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// A sampled boundary-model configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryConfig {
    /// Interior points, intensity t^2 over the open unit square.
    pub bulk: Vec<(f64, f64)>,
    /// Abscissae of points on the bottom edge y = 0, intensity alpha_plus t.
    pub bottom: Vec<f64>,
    /// Ordinates of points on the left edge x = 0, intensity alpha_minus t.
    pub left: Vec<f64>,
    /// Geometric(alpha_plus alpha_minus) weight sitting at the origin.
    pub origin_weight: u64,
}

pub(crate) fn validate_boundary(t: f64, alpha_plus: f64, alpha_minus: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!(
            "intensity t must be positive and finite, got {t}"
        )));
    }
    check_rate("alpha_plus", alpha_plus)?;
    check_rate("alpha_minus", alpha_minus)?;
    if alpha_plus * alpha_minus >= 1.0 {
        return Err(Error::Domain(format!(
            "origin weight needs alpha_plus * alpha_minus < 1, got {}",
            alpha_plus * alpha_minus
        )));
    }
    Ok(())
}

/// Draws one boundary configuration.
pub fn sample_boundary(
    t: f64,
    alpha_plus: f64,
    alpha_minus: f64,
    seed: u64,
) -> Result<BoundaryConfig> {
    validate_boundary(t, alpha_plus, alpha_minus)?;
    let mut rng = trial_rng(seed, 0);
    Ok(boundary_config_with(&mut rng, t, alpha_plus, alpha_minus))
}

/// Alias kept close to the other samplers' naming.
pub fn boundary_config(
    t: f64,
    alpha_plus: f64,
    alpha_minus: f64,
    seed: u64,
) -> Result<BoundaryConfig> {
    sample_boundary(t, alpha_plus, alpha_minus, seed)
}

pub(crate) fn boundary_config_with(
    rng: &mut ChaCha8Rng,
    t: f64,
    alpha_plus: f64,
    alpha_minus: f64,
) -> BoundaryConfig {
    let n = poisson(rng, t * t);
    let mut bulk = Vec::with_capacity(n);
    for _ in 0..n {
        let x = unit(rng);
        let y = unit(rng);
        bulk.push((x, y));
    }
    let nb = poisson(rng, alpha_plus * t);
    let mut bottom: Vec<f64> = (0..nb).map(|_| unit(rng)).collect();
    bottom.sort_by(f64::total_cmp);
    let nl = poisson(rng, alpha_minus * t);
    let mut left: Vec<f64> = (0..nl).map(|_| unit(rng)).collect();
    left.sort_by(f64::total_cmp);
    let origin_weight = geometric(rng, alpha_plus * alpha_minus);
    BoundaryConfig {
        bulk,
        bottom,
        left,
        origin_weight,
    }
}

/// Heaviest weakly monotone chain through the configuration: points are
/// ordered by x <= x' and y <= y' jointly, so runs along either edge count
/// in full, and the origin weight (included when `with_origin` is set)
/// precedes everything.  Interior points are in general position, where the
/// weak and strict orders agree.
pub fn boundary_length(cfg: &BoundaryConfig, with_origin: bool) -> u64 {
    let mut elems: Vec<(f64, f64, u64)> = Vec::new();
    if with_origin {
        elems.push((0.0, 0.0, cfg.origin_weight));
    }
    for &x in &cfg.bottom {
        elems.push((x, 0.0, 1));
    }
    for &y in &cfg.left {
        elems.push((0.0, y, 1));
    }
    for &(x, y) in &cfg.bulk {
        elems.push((x, y, 1));
    }
    elems.sort_by(|p, q| (p.0, p.1).partial_cmp(&(q.0, q.1)).expect("finite points"));
    let mut best = vec![0u64; elems.len()];
    let mut answer = 0;
    for i in 0..elems.len() {
        let mut prior = 0;
        for j in 0..i {
            if elems[j].1 <= elems[i].1 && best[j] > prior {
                prior = best[j];
            }
        }
        best[i] = prior + elems[i].2;
        answer = answer.max(best[i]);
    }
    answer
}
