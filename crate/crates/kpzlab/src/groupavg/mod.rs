//! Exact cumulative distributions of longest-path observables, computed
//! through averages over the classical compact groups.
//!
//! The underlying point process drops Poisson points into the unit square
//! and measures the longest strictly increasing chain.  Conditioning the
//! process on a reflection symmetry (about the diagonal, the
//! anti-diagonal, both, or the centre) changes the group over which the
//! generating average is taken:
//!
//! * plain process: Toeplitz determinant / U(l) average of
//!   `exp(2 lambda cos theta)`;
//! * diagonal symmetry with on-diagonal rate `alpha`: O(l) average of
//!   `(1 + alpha w) e^{z w}`;
//! * anti-diagonal symmetry with rate `beta`: Sp(l) averages, with the
//!   odd cutoff independent of `beta`;
//! * both reflections: U(l) averages of a rational symbol times
//!   `e^{z(w + 1/w)}`, with the odd cutoff obtained by setting `beta = 0`;
//! * central (half-turn) symmetry: products of two plain distributions.
//!
//! Every cutoff probability is an entire expression in the rates, so the
//! routines here are exact up to quadrature error, which is spectrally
//! small for these analytic symbols.

pub mod heine;
pub mod weyl;

pub use heine::{heine_average, heine_log_average, SpectralWeight};
pub use weyl::{weyl_average, CompactGroup};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::combinat::SymmetryClass;
use crate::{Error, Result};

fn check_rate(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!(
            "{name} must be finite and non-negative, got {v}"
        )));
    }
    Ok(())
}

/// Probability that the longest increasing chain through a Poisson
/// process of intensity `lambda^2` in the unit square has length at most
/// `bound`.
pub fn hammersley_cdf_exact(lambda: f64, bound: usize) -> Result<f64> {
    check_rate("lambda", lambda)?;
    let weight = SpectralWeight::exp_cos(lambda);
    hammersley_with(&weight, lambda, bound)
}

/// Same as [`hammersley_cdf_exact`] with a caller-supplied weight whose
/// Fourier cache can be shared across many cutoffs.
fn hammersley_with(weight: &SpectralWeight, lambda: f64, bound: usize) -> Result<f64> {
    if lambda == 0.0 {
        return Ok(1.0);
    }
    if lambda * lambda <= 200.0 {
        let d = heine_average(weight, bound)?;
        Ok(((-lambda * lambda).exp() * d).clamp(0.0, 1.0))
    } else {
        // Assemble in log space: the determinant alone would overflow f64.
        let logd = heine_log_average(weight, bound)?;
        Ok((logd - lambda * lambda).exp().clamp(0.0, 1.0))
    }
}

/// Probability that the longest increasing chain through a symmetrized
/// Poisson process has length at most `bound`.
///
/// `z` is the bulk rate parameter; `alpha` weights points on the
/// diagonal (classes with diagonal symmetry), `beta` points on the
/// anti-diagonal (classes with anti-diagonal symmetry) and must lie in
/// `[0, 1)`.  A rate that the chosen class has no use for must be zero.
pub fn symmetrized_cdf_exact(
    z: f64,
    alpha: f64,
    beta: f64,
    bound: usize,
    class: SymmetryClass,
) -> Result<f64> {
    check_rate("z", z)?;
    check_rate("alpha", alpha)?;
    check_rate("beta", beta)?;
    if beta >= 1.0 {
        return Err(Error::Domain(format!(
            "beta must lie in [0, 1) for the anti-diagonal geometric weight, got {beta}"
        )));
    }
    let require_zero = |name: &str, v: f64| -> Result<()> {
        if v != 0.0 {
            Err(Error::Domain(format!(
                "{name} = {v} has no meaning for the {} symmetry class; pass 0",
                class.name()
            )))
        } else {
            Ok(())
        }
    };
    match class {
        SymmetryClass::Plain => {
            require_zero("alpha", alpha)?;
            require_zero("beta", beta)?;
            hammersley_cdf_exact(z, bound)
        }
        SymmetryClass::Diag => {
            require_zero("beta", beta)?;
            let f = move |w: Complex64| (1.0 + alpha * w) * (z * w).exp();
            let avg = weyl_average(&f, CompactGroup::Orthogonal(bound))?;
            Ok(((-alpha * z - z * z / 2.0).exp() * avg).clamp(0.0, 1.0))
        }
        SymmetryClass::AntiDiag => {
            require_zero("alpha", alpha)?;
            if bound % 2 == 0 {
                let l = bound / 2;
                let f = move |w: Complex64| (z * w).exp() / (1.0 - beta * w.inv());
                let avg = weyl_average(&f, CompactGroup::Symplectic(l))?;
                Ok(((-beta * z - z * z / 2.0).exp() * avg).clamp(0.0, 1.0))
            } else {
                // An odd cutoff cannot be saturated without a point on the
                // anti-diagonal participating, and those points never chain
                // with each other, so the cutoff probability is free of beta.
                let l = (bound - 1) / 2;
                let f = move |w: Complex64| (z * w).exp();
                let avg = weyl_average(&f, CompactGroup::Symplectic(l))?;
                Ok(((-z * z / 2.0).exp() * avg).clamp(0.0, 1.0))
            }
        }
        SymmetryClass::BothDiags => {
            let (l, b) = if bound % 2 == 0 {
                (bound / 2, beta)
            } else {
                // Odd cutoffs coincide with the even formula at beta = 0.
                ((bound - 1) / 2, 0.0)
            };
            let f = move |w: Complex64| {
                (1.0 + alpha * w) / (1.0 - b * w) * (z * (w + w.inv())).exp()
            };
            let avg = weyl_average(&f, CompactGroup::Unitary(l))?;
            Ok(((-z * z - alpha * z - b * z).exp() * avg).clamp(0.0, 1.0))
        }
        SymmetryClass::Central => {
            require_zero("alpha", alpha)?;
            require_zero("beta", beta)?;
            let weight = SpectralWeight::exp_cos(z);
            if bound % 2 == 0 {
                let p = hammersley_with(&weight, z, bound / 2)?;
                Ok(p * p)
            } else {
                let hi = hammersley_with(&weight, z, (bound + 1) / 2)?;
                let lo = hammersley_with(&weight, z, (bound - 1) / 2)?;
                Ok(hi * lo)
            }
        }
    }
}

/// A table of cutoff probabilities for one parameter setting, with CSV
/// output in the schema `param,alpha,beta,symmetry,l,cdf`.
#[derive(Debug, Clone)]
pub struct DistTable {
    pub param: f64,
    pub alpha: f64,
    pub beta: f64,
    pub symmetry: SymmetryClass,
    /// `(bound, cdf)` rows for bounds `0..=max_bound`.
    pub rows: Vec<(usize, f64)>,
}

impl DistTable {
    /// Table for the plain process at rate parameter `lambda`.
    pub fn hammersley(lambda: f64, max_bound: usize) -> Result<Self> {
        check_rate("lambda", lambda)?;
        let weight = SpectralWeight::exp_cos(lambda);
        if lambda > 0.0 && max_bound > 0 {
            // Warm the Fourier cache once, serially, so the parallel rows
            // below see a fixed coefficient set regardless of scheduling.
            weight.fourier(max_bound as i64 - 1)?;
        }
        let rows = (0..=max_bound)
            .into_par_iter()
            .map(|l| hammersley_with(&weight, lambda, l).map(|c| (l, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DistTable {
            param: lambda,
            alpha: 0.0,
            beta: 0.0,
            symmetry: SymmetryClass::Plain,
            rows,
        })
    }

    /// Table for a symmetrized process.
    pub fn symmetrized(
        z: f64,
        alpha: f64,
        beta: f64,
        class: SymmetryClass,
        max_bound: usize,
    ) -> Result<Self> {
        let rows = (0..=max_bound)
            .into_par_iter()
            .map(|l| symmetrized_cdf_exact(z, alpha, beta, l, class).map(|c| (l, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DistTable {
            param: z,
            alpha,
            beta,
            symmetry: class,
            rows,
        })
    }

    /// Writes the table as CSV with 12 significant digits per probability.
    pub fn to_csv<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "param,alpha,beta,symmetry,l,cdf")?;
        for &(l, cdf) in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{:.11e}",
                self.param,
                self.alpha,
                self.beta,
                self.symmetry.name(),
                l,
                cdf
            )?;
        }
        Ok(())
    }
}
