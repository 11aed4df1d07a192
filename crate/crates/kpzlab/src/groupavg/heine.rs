//! Toeplitz-determinant evaluation of unitary-group averages.
//!
//! For a weight `f` on the unit circle, the Haar average of
//! `prod_j f(e^{i theta_j})` over U(l) equals the l x l Toeplitz
//! determinant `det[ c_{j-k} ]` built from the Fourier coefficients
//! `c_k = (1/2pi) int f(theta) e^{-i k theta} d theta`.  This route scales
//! to large `l`, unlike direct eigenvalue quadrature.
//!
//! Fourier coefficients are computed by trapezoidal sampling, which is
//! spectrally accurate for smooth periodic weights.  The grid is doubled
//! until doubling no longer moves any requested coefficient beyond
//! `1e-12` relative to the largest one.  Determinants are evaluated twice,
//! in `f64` and in high-precision arithmetic, and disagreement beyond
//! `1e-6` relative triggers escalation and finally an accuracy error.

use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::specfun::{det_lu, BigFloat, PrecisionContext, Scalar};
use crate::{Error, Result};

/// Smallest Fourier sampling grid.
const GRID_MIN: usize = 4096;

/// Largest Fourier sampling grid before giving up.
const GRID_MAX: usize = 65536;

/// Relative tolerance for grid-doubling agreement of Fourier coefficients.
const FOURIER_TOL: f64 = 1e-12;

/// Relative tolerance between the f64 and high-precision determinants.
const DET_TOL: f64 = 1e-6;

/// A positive smooth weight on the unit circle with cached Fourier
/// coefficients.
///
/// The symbol is stored as a function of the angle.  Coefficients are
/// computed lazily and shared; the weight is `Send + Sync`, so one
/// instance can serve a parallel table build.
#[derive(Clone)]
pub struct SpectralWeight {
    symbol: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    cache: Arc<Mutex<FourierCache>>,
}

struct FourierCache {
    /// Grid size the stored coefficients were computed on (0 = empty).
    grid: usize,
    /// Coefficients `c_0, c_1, ..., c_kmax`; negative orders follow by
    /// conjugation since the weight is real.
    coeffs: Vec<Complex64>,
}

impl SpectralWeight {
    /// Wraps an arbitrary smooth positive weight `theta -> f(theta)`.
    pub fn new(symbol: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SpectralWeight {
            symbol: Arc::new(symbol),
            cache: Arc::new(Mutex::new(FourierCache {
                grid: 0,
                coeffs: Vec::new(),
            })),
        }
    }

    /// The weight `exp(2 t cos theta)`, whose Fourier coefficients are the
    /// modified Bessel functions `I_k(2t)`.
    pub fn exp_cos(t: f64) -> Self {
        SpectralWeight::new(move |theta: f64| (2.0 * t * theta.cos()).exp())
    }

    /// Evaluates the weight at an angle.
    pub fn eval(&self, theta: f64) -> f64 {
        (self.symbol)(theta)
    }

    /// Fourier coefficient `c_k = (1/2pi) int f(theta) e^{-i k theta}`.
    pub fn fourier(&self, k: i64) -> Result<Complex64> {
        let ka = k.unsigned_abs() as usize;
        self.ensure(ka)?;
        let cache = self.cache.lock().unwrap();
        let c = cache.coeffs[ka];
        Ok(if k < 0 { c.conj() } else { c })
    }

    fn dft(&self, grid: usize, kmax: usize) -> Vec<Complex64> {
        let mut vals = Vec::with_capacity(grid);
        for j in 0..grid {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / grid as f64;
            vals.push((self.symbol)(theta));
        }
        let mut coeffs = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &v) in vals.iter().enumerate() {
                let phase = -2.0 * std::f64::consts::PI * (k * j % grid) as f64 / grid as f64;
                acc += v * Complex64::from_polar(1.0, phase);
            }
            coeffs.push(acc / grid as f64);
        }
        coeffs
    }

    /// Makes sure coefficients `0..=kmax` are cached on a grid fine enough
    /// that one more doubling would not move them.
    fn ensure(&self, kmax: usize) -> Result<()> {
        {
            let cache = self.cache.lock().unwrap();
            if cache.grid != 0 && cache.coeffs.len() > kmax {
                return Ok(());
            }
        }
        let mut grid = GRID_MIN;
        let mut coarse = self.dft(grid, kmax);
        loop {
            let fine = self.dft(2 * grid, kmax);
            let scale = fine
                .iter()
                .map(|c| c.norm())
                .fold(1.0_f64, f64::max);
            let diff = coarse
                .iter()
                .zip(&fine)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0_f64, f64::max);
            if diff <= FOURIER_TOL * scale {
                let mut cache = self.cache.lock().unwrap();
                cache.grid = 2 * grid;
                cache.coeffs = fine;
                return Ok(());
            }
            grid *= 2;
            if 2 * grid > GRID_MAX {
                return Err(Error::Accuracy(format!(
                    "Fourier coefficients of the weight did not stabilize on grids up to {GRID_MAX}"
                )));
            }
            coarse = fine;
        }
    }
}

/// Complex number with high-precision real and imaginary parts, used to
/// cross-check `f64` Toeplitz determinants.
#[derive(Clone)]
struct CBig {
    re: BigFloat,
    im: BigFloat,
}

impl CBig {
    fn from_c64(z: Complex64, ctx: &PrecisionContext) -> Self {
        CBig {
            re: ctx.from_f64(z.re),
            im: ctx.from_f64(z.im),
        }
    }
}

impl Scalar for CBig {
    fn s_zero(like: &Self) -> Self {
        let prec = like.re.prec();
        CBig {
            re: BigFloat::zero(prec),
            im: BigFloat::zero(prec),
        }
    }

    fn s_one(like: &Self) -> Self {
        let prec = like.re.prec();
        CBig {
            re: BigFloat::from_u64(1, prec),
            im: BigFloat::zero(prec),
        }
    }

    fn s_add(&self, rhs: &Self) -> Self {
        CBig {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    fn s_sub(&self, rhs: &Self) -> Self {
        CBig {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    fn s_mul(&self, rhs: &Self) -> Self {
        CBig {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    fn s_div(&self, rhs: &Self) -> Self {
        let den = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        CBig {
            re: self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&den),
            im: self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&den),
        }
    }

    fn s_neg(&self) -> Self {
        CBig {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    fn mag(&self) -> f64 {
        self.re.mag().hypot(self.im.mag())
    }

    fn s_is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

fn toeplitz_det_f64(coeffs: &dyn Fn(i64) -> Complex64, l: usize) -> Complex64 {
    let m: Vec<Vec<Complex64>> = (0..l)
        .map(|j| (0..l).map(|k| coeffs(j as i64 - k as i64)).collect())
        .collect();
    det_lu(m)
}

fn toeplitz_det_big(coeffs: &dyn Fn(i64) -> Complex64, l: usize, bits: u32) -> Complex64 {
    let ctx = PrecisionContext::new(bits);
    let m: Vec<Vec<CBig>> = (0..l)
        .map(|j| {
            (0..l)
                .map(|k| CBig::from_c64(coeffs(j as i64 - k as i64), &ctx))
                .collect()
        })
        .collect();
    let d = det_lu(m);
    Complex64::new(d.re.to_f64(), d.im.to_f64())
}

fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = b.norm().max(f64::MIN_POSITIVE);
    (a - b).norm() / scale
}

/// Haar average of `prod_j f(e^{i theta_j})` over U(l), as the l x l
/// Toeplitz determinant of the weight's Fourier coefficients.
///
/// Every determinant is computed both in `f64` and in 192-bit arithmetic.
/// If the two disagree beyond `1e-6` relative, precision escalates to
/// 384 bits; persistent disagreement raises an accuracy error.  When the
/// `f64` determinant overflows, the check runs between the two
/// high-precision levels instead.
pub fn heine_average(weight: &SpectralWeight, l: usize) -> Result<f64> {
    if l == 0 {
        return Ok(1.0);
    }
    let kmax = (l - 1) as i64;
    let mut stored = Vec::with_capacity(2 * l - 1);
    for k in -kmax..=kmax {
        stored.push(weight.fourier(k)?);
    }
    let coeffs = move |k: i64| stored[(k + kmax) as usize];

    let d64 = toeplitz_det_f64(&coeffs, l);
    let d192 = toeplitz_det_big(&coeffs, l, 192);
    if d64.re.is_finite() && d64.im.is_finite() && rel_diff(d64, d192) <= DET_TOL {
        return Ok(d192.re);
    }
    let d384 = toeplitz_det_big(&coeffs, l, 384);
    if rel_diff(d192, d384) <= DET_TOL {
        return Ok(d384.re);
    }
    Err(Error::Accuracy(format!(
        "Toeplitz determinant of order {l} is ill-conditioned: f64, 192-bit and 384-bit evaluations disagree"
    )))
}

/// Same as [`heine_average`] but returning `log` of the determinant-based
/// average, assembled in high precision so that huge determinants and tiny
/// prefactors never overflow `f64`.
pub fn heine_log_average(weight: &SpectralWeight, l: usize) -> Result<f64> {
    if l == 0 {
        return Ok(0.0);
    }
    let kmax = (l - 1) as i64;
    let mut stored = Vec::with_capacity(2 * l - 1);
    for k in -kmax..=kmax {
        stored.push(weight.fourier(k)?);
    }
    let coeffs = move |k: i64| stored[(k + kmax) as usize];

    let ctx = PrecisionContext::new(192);
    let m: Vec<Vec<CBig>> = (0..l)
        .map(|j| {
            (0..l)
                .map(|k| CBig::from_c64(coeffs(j as i64 - k as i64), &ctx))
                .collect()
        })
        .collect();
    let d192 = det_lu(m);
    let ctx384 = PrecisionContext::new(384);
    let m: Vec<Vec<CBig>> = (0..l)
        .map(|j| {
            (0..l)
                .map(|k| CBig::from_c64(coeffs(j as i64 - k as i64), &ctx384))
                .collect()
        })
        .collect();
    let d384 = det_lu(m);
    if d384.re.signum() <= 0 {
        return Err(Error::Accuracy(format!(
            "Toeplitz determinant of order {l} is not positive; log requested"
        )));
    }
    let log192 = d192.re.ln_f64();
    let log384 = d384.re.ln_f64();
    if !log192.is_finite() || (log192 - log384).abs() > DET_TOL * log384.abs().max(1.0) {
        return Err(Error::Accuracy(format!(
            "log Toeplitz determinant of order {l} did not stabilize under precision escalation"
        )));
    }
    Ok(log384)
}
