//! Averages of multiplicative class functions over the classical compact
//! groups, computed by direct quadrature of the eigenvalue densities.
//!
//! For a symbol `f` on the unit circle, the average of
//! `prod_j f(lambda_j)` over the eigenvalues `lambda_j` of a Haar-random
//! group element is an integral against the Weyl measure.  Eigenvalues of
//! orthogonal and symplectic matrices come in conjugate pairs, possibly
//! together with fixed eigenvalues at +1 or -1, so the integral is taken
//! over the free angles only, with the paired factor
//! `g(theta) = f(e^{i theta}) f(e^{-i theta})` as the integrand.
//!
//! Normalization constants are never taken from closed forms: the
//! denominator is the same quadrature applied to `f == 1`, so any overall
//! constant in the density cancels exactly.

use num_complex::Complex64;

use crate::specfun::periodic_quadrature;
use crate::{Error, Result};

/// A classical compact group, identified by its natural index.
///
/// `Unitary(l)` is U(l) with `l` eigenvalues on the circle.
/// `OrthogonalPlus(l)` / `OrthogonalMinus(l)` are the determinant +1 / -1
/// components of O(l); `Orthogonal(l)` averages the two components with
/// equal weight.  `Symplectic(l)` is Sp(l), the group of 2l x 2l unitary
/// symplectic matrices, whose eigenvalues are l conjugate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactGroup {
    Unitary(usize),
    OrthogonalPlus(usize),
    OrthogonalMinus(usize),
    Orthogonal(usize),
    Symplectic(usize),
}

/// Maximum number of free angles a single quadrature may have.
const MAX_FREE_ANGLES: usize = 4;

/// Orthogonal groups beyond this size would need more than four free pairs.
const MAX_ORTHOGONAL: usize = 9;

fn grid_for(dim: usize) -> usize {
    if dim <= 2 {
        256
    } else {
        64
    }
}

/// Per-angle factor multiplying the squared cosine Vandermonde.
#[derive(Clone, Copy)]
enum PerAngle {
    One,
    TwoMinusTwoCos,
    TwoPlusTwoCos,
    FourSinSq,
}

impl PerAngle {
    fn eval(self, theta: f64) -> f64 {
        match self {
            PerAngle::One => 1.0,
            PerAngle::TwoMinusTwoCos => 2.0 - 2.0 * theta.cos(),
            PerAngle::TwoPlusTwoCos => 2.0 + 2.0 * theta.cos(),
            PerAngle::FourSinSq => {
                let s = theta.sin();
                4.0 * s * s
            }
        }
    }
}

fn cos_vandermonde_sq(theta: &[f64]) -> f64 {
    let c: Vec<f64> = theta.iter().map(|t| 2.0 * t.cos()).collect();
    let mut v = 1.0;
    for j in 0..c.len() {
        for k in j + 1..c.len() {
            let d = c[j] - c[k];
            v *= d * d;
        }
    }
    v
}

/// Average of `prod f(lambda)` over `m` conjugate pairs with the given
/// per-angle density factor, times `prod f(w)` over fixed eigenvalues `w`.
///
/// The symbol must have real Fourier coefficients (`f(conj z) = conj f(z)`),
/// which makes the average real; this holds for every weight used by the
/// distribution formulas.  The quadrature grid is symmetric under
/// `theta -> -theta`, so the imaginary parts cancel exactly and only the
/// real part of the integrand is accumulated.
fn paired_average(
    f: &dyn Fn(Complex64) -> Complex64,
    m: usize,
    per: PerAngle,
    fixed: &[Complex64],
) -> Result<f64> {
    let fixed_val: Complex64 = fixed.iter().map(|&w| f(w)).product();
    if m == 0 {
        return Ok(fixed_val.re);
    }
    if m > MAX_FREE_ANGLES {
        return Err(Error::Domain(format!(
            "group average needs {m} free angles; at most {MAX_FREE_ANGLES} supported"
        )));
    }
    let n = grid_for(m);
    let num = periodic_quadrature(m, n, &mut |theta: &[f64]| {
        let dens = cos_vandermonde_sq(theta)
            * theta.iter().map(|&t| per.eval(t)).product::<f64>();
        let g: Complex64 = theta
            .iter()
            .map(|&t| {
                let w = Complex64::from_polar(1.0, t);
                f(w) * f(w.conj())
            })
            .product();
        (fixed_val * g).re * dens
    });
    let den = periodic_quadrature(m, n, &mut |theta: &[f64]| {
        cos_vandermonde_sq(theta) * theta.iter().map(|&t| per.eval(t)).product::<f64>()
    });
    Ok(num / den)
}

fn unitary_average(f: &dyn Fn(Complex64) -> Complex64, l: usize) -> Result<f64> {
    if l == 0 {
        return Ok(1.0);
    }
    if l > MAX_FREE_ANGLES {
        return Err(Error::Domain(format!(
            "U({l}) average needs {l} free angles; at most {MAX_FREE_ANGLES} supported"
        )));
    }
    let n = grid_for(l);
    let num = periodic_quadrature(l, n, &mut |theta: &[f64]| {
        let mut dens = 1.0;
        for j in 0..l {
            for k in j + 1..l {
                let d = (Complex64::from_polar(1.0, theta[j])
                    - Complex64::from_polar(1.0, theta[k]))
                .norm_sqr();
                dens *= d;
            }
        }
        let p: Complex64 = theta
            .iter()
            .map(|&t| f(Complex64::from_polar(1.0, t)))
            .product();
        p.re * dens
    });
    let den = periodic_quadrature(l, n, &mut |theta: &[f64]| {
        let mut dens = 1.0;
        for j in 0..l {
            for k in j + 1..l {
                let d = (Complex64::from_polar(1.0, theta[j])
                    - Complex64::from_polar(1.0, theta[k]))
                .norm_sqr();
                dens *= d;
            }
        }
        dens
    });
    Ok(num / den)
}

/// Average of the multiplicative class function `U -> prod_j f(lambda_j)`
/// over the Haar measure of `group`.
///
/// The symbol must satisfy `f(conj z) = conj f(z)` so the average is real.
/// Groups needing more than four free angles are rejected with a domain
/// error; for the orthogonal family this caps the size at O(9).
pub fn weyl_average(f: &dyn Fn(Complex64) -> Complex64, group: CompactGroup) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let minus_one = Complex64::new(-1.0, 0.0);
    match group {
        CompactGroup::Unitary(l) => unitary_average(f, l),
        CompactGroup::OrthogonalPlus(l) => {
            check_orthogonal(l)?;
            if l == 0 {
                Ok(1.0)
            } else if l % 2 == 0 {
                paired_average(f, l / 2, PerAngle::One, &[])
            } else {
                paired_average(f, l / 2, PerAngle::TwoMinusTwoCos, &[one])
            }
        }
        CompactGroup::OrthogonalMinus(l) => {
            check_orthogonal(l)?;
            if l == 0 {
                Err(Error::Domain(
                    "O^-(0) is empty; no average exists".to_string(),
                ))
            } else if l % 2 == 1 {
                paired_average(f, l / 2, PerAngle::TwoPlusTwoCos, &[minus_one])
            } else {
                paired_average(f, l / 2 - 1, PerAngle::FourSinSq, &[one, minus_one])
            }
        }
        CompactGroup::Orthogonal(l) => {
            check_orthogonal(l)?;
            if l == 0 {
                return Ok(1.0);
            }
            let plus = weyl_average(f, CompactGroup::OrthogonalPlus(l))?;
            let minus = weyl_average(f, CompactGroup::OrthogonalMinus(l))?;
            Ok(0.5 * (plus + minus))
        }
        CompactGroup::Symplectic(l) => {
            if l == 0 {
                return Ok(1.0);
            }
            paired_average(f, l, PerAngle::FourSinSq, &[])
        }
    }
}

fn check_orthogonal(l: usize) -> Result<()> {
    if l > MAX_ORTHOGONAL {
        return Err(Error::Domain(format!(
            "O({l}) average not supported; orthogonal groups are capped at O({MAX_ORTHOGONAL})"
        )));
    }
    Ok(())
}
