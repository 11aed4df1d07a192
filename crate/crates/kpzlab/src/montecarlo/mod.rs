//! Stochastic samplers for the point-process models and their observables:
//! Poisson configurations in the unit square (plain and symmetrized),
//! droplet growth dynamics, the boundary-source model, and the lattice
//! last-passage model, with reproducible batching and empirical CDFs.
//!
//! Reproducibility contract: every trial draws from a counter-based stream
//! keyed by `(master seed, trial index)`, so batches are identical for any
//! worker count and any evaluation order.  Stream 0 of each master seed is
//! reserved; trials occupy streams 1 and up.

mod boundary;
mod johansson;
mod png;
mod points;

pub use boundary::{boundary_config, boundary_length, sample_boundary, BoundaryConfig};
pub use johansson::{johansson_lpp, JohanssonSample};
pub use png::{png_from_events, png_simulate, PngSurface};
pub use points::{lis_of_config, sample_points, PointConfig};

use crate::combinat::SymmetryClass;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

/// The random stream for one trial of a batch.
pub(crate) fn trial_rng(master_seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial as u64 + 1);
    rng
}

/// Uniform draw from the open interval (0, 1) at 53-bit resolution.
pub(crate) fn unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            return u;
        }
    }
}

/// Poisson count with the given mean (exact sampling at any scale).
pub(crate) fn poisson(rng: &mut ChaCha8Rng, mean: f64) -> usize {
    if mean == 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("positive finite mean");
    dist.sample(rng) as usize
}

/// Geometric count on {0, 1, ...} with Pr(k) = (1-p) p^k.
pub(crate) fn geometric(rng: &mut ChaCha8Rng, p: f64) -> u64 {
    if p == 0.0 {
        return 0;
    }
    let u = unit(rng);
    (u.ln() / p.ln()) as u64
}

pub(crate) fn check_rate(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!(
            "{name} must be finite and non-negative, got {v}"
        )));
    }
    Ok(())
}

/// One reproducible batch of trials of an integer observable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialBatch {
    /// `(master seed, trial count)` per merged segment, in order.
    sources: Vec<(u64, usize)>,
    values: Vec<u64>,
}

impl TrialBatch {
    fn run(seed: u64, trials: usize, f: impl Fn(&mut ChaCha8Rng) -> u64 + Sync) -> TrialBatch {
        let values: Vec<u64> = (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(seed, i);
                f(&mut rng)
            })
            .collect();
        TrialBatch {
            sources: vec![(seed, trials)],
            values,
        }
    }

    pub fn seed(&self) -> u64 {
        self.sources[0].0
    }

    pub fn trials(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Concatenates two batches of the same observable.  Batches sharing a
    /// master seed replay identical streams, so merging them would silently
    /// duplicate every trial; that is rejected.
    pub fn merge(&self, other: &TrialBatch) -> Result<TrialBatch> {
        for &(s, _) in &self.sources {
            if other.sources.iter().any(|&(t, _)| t == s) {
                return Err(Error::Domain(format!(
                    "batches share master seed {s}; merging would duplicate trials"
                )));
            }
        }
        let mut sources = self.sources.clone();
        sources.extend_from_slice(&other.sources);
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Ok(TrialBatch { sources, values })
    }

    /// CSV rows `seed,trial,observable`; trial indices restart per segment.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,trial,observable\n");
        let mut pos = 0;
        for &(seed, count) in &self.sources {
            for trial in 0..count {
                out.push_str(&format!("{},{},{}\n", seed, trial, self.values[pos]));
                pos += 1;
            }
        }
        out
    }

    /// Empirical CDF with binomial standard errors.
    pub fn empirical_cdf(&self) -> EmpiricalCdf {
        assert!(!self.values.is_empty(), "empty batch has no distribution");
        let n = self.values.len();
        let max = *self.values.iter().max().expect("nonempty");
        let mut counts = vec![0usize; max as usize + 1];
        for &v in &self.values {
            counts[v as usize] += 1;
        }
        let mut rows = Vec::with_capacity(max as usize + 1);
        let mut below = 0usize;
        for (l, &c) in counts.iter().enumerate() {
            below += c;
            let p = below as f64 / n as f64;
            let err = (p * (1.0 - p) / n as f64).sqrt();
            rows.push((l as u64, p, err));
        }
        EmpiricalCdf { trials: n, rows }
    }
}

/// Empirical distribution table: `(l, cdf, stderr)` rows for l from 0 to
/// the largest observed value; the CDF is 1 beyond.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    pub trials: usize,
    pub rows: Vec<(u64, f64, f64)>,
}

impl EmpiricalCdf {
    pub fn cdf_at(&self, l: u64) -> f64 {
        match self.rows.iter().find(|r| r.0 == l) {
            Some(r) => r.1,
            None => {
                if l > self.rows.last().expect("rows nonempty").0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn stderr_at(&self, l: u64) -> f64 {
        self.rows.iter().find(|r| r.0 == l).map_or(0.0, |r| r.2)
    }

    /// CSV rows `l,empirical_cdf,stderr`, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,empirical_cdf,stderr\n");
        for &(l, p, e) in &self.rows {
            out.push_str(&format!("{},{:.11e},{:.11e}\n", l, p, e));
        }
        out
    }
}

/// Batch of longest-chain lengths through sampled configurations.
pub fn lis_batch(
    param: f64,
    class: SymmetryClass,
    alpha: f64,
    beta: f64,
    trials: usize,
    seed: u64,
) -> Result<TrialBatch> {
    points::validate_class_rates(param, class, alpha, beta)?;
    Ok(TrialBatch::run(seed, trials, move |rng| {
        let cfg = points::sample_points_with(rng, param, class, alpha, beta);
        lis_of_config(&cfg) as u64
    }))
}

/// Batch of droplet heights h(0, T).
pub fn png_batch(t_max: f64, trials: usize, seed: u64) -> Result<TrialBatch> {
    png::validate_time(t_max)?;
    Ok(TrialBatch::run(seed, trials, move |rng| {
        png::png_simulate_with(rng, t_max).height_at_origin
    }))
}

/// Batch of boundary-model path lengths.
pub fn boundary_batch(
    t: f64,
    alpha_plus: f64,
    alpha_minus: f64,
    with_origin: bool,
    trials: usize,
    seed: u64,
) -> Result<TrialBatch> {
    boundary::validate_boundary(t, alpha_plus, alpha_minus)?;
    Ok(TrialBatch::run(seed, trials, move |rng| {
        let cfg = boundary::boundary_config_with(rng, t, alpha_plus, alpha_minus);
        boundary_length(&cfg, with_origin)
    }))
}

/// Batch of lattice last-passage values L(n, n).
pub fn johansson_batch(
    n: usize,
    a: &[f64],
    b: &[f64],
    trials: usize,
    seed: u64,
) -> Result<TrialBatch> {
    johansson::validate_johansson(n, a, b)?;
    let (a, b) = (a.to_vec(), b.to_vec());
    Ok(TrialBatch::run(seed, trials, move |rng| {
        johansson::johansson_lpp_with(rng, &a, &b).length
    }))
}
