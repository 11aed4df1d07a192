//! Orthogonal polynomials on the unit circle for the weight exp(2t cos θ).
//!
//! The Verblunsky-type coefficients r_n = π_n(0) of this weight satisfy a
//! discrete Painlevé II recurrence.  Forward iteration of that recurrence
//! yields, via the norm relation 1 − r_n² = (κ_{n−1}/κ_n)², the Toeplitz
//! determinants D_l = ⟨exp(2t Σ cos θ_j)⟩_{U(l)} in log space, polynomial
//! values π_n/π_n* with closed-form derivatives, bordered determinants with
//! boundary sources, and the cumulative distribution of the longest
//! up/right path in a unit square with additional Poisson rates on two
//! boundary edges and an optional geometric contribution at the corner.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{bessel_i, det_lu, BigFloat, PrecisionContext};

/// Hard cap on the recurrence length; forward iteration is a desk-scale tool.
pub const MAX_SEQUENCE_LEN: usize = 200;

/// Working precision contract: four bits per recurrence step, floor of 128.
/// Stability floor for the monitored recurrence at a given length.
pub(crate) fn required_bits(n_max: usize) -> u32 {
    (4 * n_max as u32).max(128)
}

/// Default working precision; the environment variable
/// `KPZLAB_PRECISION_BITS` overrides it (values below the stability floor
/// are rejected by `discrete_p2`).
pub fn default_bits(n_max: usize) -> u32 {
    let computed = required_bits(n_max);
    match std::env::var("KPZLAB_PRECISION_BITS") {
        Ok(s) => s.trim().parse::<u32>().map(|b| b.max(53)).unwrap_or(computed),
        Err(_) => computed,
    }
}

/// Verblunsky coefficients r_0..r_{n_max} for the weight exp(2t cos θ),
/// together with log D_0..log D_{n_max+1} accumulated from the norm
/// relation.  Construction is sequential; a finished value is immutable.
#[derive(Debug, Clone)]
pub struct OpucSequence {
    t: f64,
    bits: u32,
    r: Vec<BigFloat>,
    log_d: Vec<f64>,
}

/// Outcome of one monitored recurrence pass at a fixed precision.
enum Pass {
    Clean(Vec<BigFloat>),
    Broken { index: usize, what: &'static str },
}

/// r_1 = −I_1(2t)/I_0(2t): the monic degree-one polynomial for Fourier
/// coefficients I_k(2t) is z − I_1/I_0, evaluated at the origin.
fn seed_r1(t: f64, bits: u32) -> BigFloat {
    let two_t = BigFloat::from_f64(2.0 * t, bits);
    let i0 = bessel_i(0, &two_t, bits);
    let i1 = bessel_i(1, &two_t, bits);
    i1.div(&i0).neg()
}

/// One full monitored forward pass of the recurrence
/// r_{n+1} = −(n/t)·r_n/(1 − r_n²) − r_{n−1} at the given precision.
/// Monitors: |r_n| < 1 and sign(r_n) = (−1)^n for n ≥ 1; the first breach
/// reports the offending index.
fn recurrence_pass(t: f64, n_max: usize, bits: u32) -> Pass {
    let one = BigFloat::from_u64(1, bits);
    let tb = BigFloat::from_f64(t, bits);
    let mut r = Vec::with_capacity(n_max + 1);
    r.push(one.clone());
    if n_max == 0 {
        return Pass::Clean(r);
    }
    r.push(seed_r1(t, bits));
    for n in 1..n_max {
        let rn = &r[n];
        let denom = one.sub(&rn.mul(rn));
        let coeff = BigFloat::from_u64(n as u64, bits).div(&tb);
        let next = coeff.mul(rn).div(&denom).neg().sub(&r[n - 1]);
        let m = n + 1;
        if next.abs().cmp_value(&one) != Ordering::Less {
            return Pass::Broken { index: m, what: "magnitude" };
        }
        let sign = next.signum();
        let want_negative = m % 2 == 1;
        if sign == 0 || (sign < 0) != want_negative {
            return Pass::Broken { index: m, what: "sign" };
        }
        r.push(next);
    }
    Pass::Clean(r)
}

/// log D_0..log D_{n+1} from coefficients r_0..r_n and the telescoping
/// log D_{n+1} = log D_n + log I_0(2t) + Σ_{j=1}^n log(1 − r_j²).
/// A coefficient with |r_j| ≥ 1 poisons every later entry with NaN.
fn accumulate_log_d(t: f64, bits: u32, r: &[BigFloat]) -> Vec<f64> {
    let two_t = BigFloat::from_f64(2.0 * t, bits);
    let log_c0 = bessel_i(0, &two_t, bits).ln_f64();
    let one = BigFloat::from_u64(1, bits);
    let mut log_d = Vec::with_capacity(r.len() + 1);
    log_d.push(0.0);
    let mut cum = 0.0;
    for n in 0..r.len() {
        if n >= 1 {
            let factor = one.sub(&r[n].mul(&r[n]));
            cum += if factor.signum() > 0 { factor.ln_f64() } else { f64::NAN };
        }
        log_d.push(log_d[n] + log_c0 + cum);
    }
    log_d
}

/// Runs the monitored recurrence at the requested precision, escalating once
/// to double width if an invariant breaks; a second break is reported as an
/// instability with the last index the monitors still accepted.
pub fn discrete_p2(t: f64, n_max: usize, ctx: &PrecisionContext) -> Result<OpucSequence> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("intensity t must be positive, got {t}")));
    }
    if n_max > MAX_SEQUENCE_LEN {
        return Err(Error::Domain(format!(
            "recurrence length {n_max} exceeds the supported cap {MAX_SEQUENCE_LEN}"
        )));
    }
    if ctx.bits < required_bits(n_max) {
        return Err(Error::Domain(format!(
            "{} bits is below the required max(128, 4*{n_max})",
            ctx.bits
        )));
    }
    match recurrence_pass(t, n_max, ctx.bits) {
        Pass::Clean(r) => Ok(OpucSequence::from_parts(t, ctx.bits, r)),
        Pass::Broken { index: first, what: what_first } => {
            let escalated = 2 * ctx.bits;
            match recurrence_pass(t, n_max, escalated) {
                Pass::Clean(r) => Ok(OpucSequence::from_parts(t, escalated, r)),
                Pass::Broken { index, what } => Err(Error::Instability {
                    message: format!(
                        "coefficient {what} invariant broke at n={index} even at \
                         {escalated} bits (first {what_first} break at n={first} \
                         with {} bits); values beyond the reported index are \
                         untrusted",
                        ctx.bits
                    ),
                    last_good: index - 1,
                }),
            }
        }
    }
}

/// `discrete_p2` at the default precision for the requested length.
pub fn opuc_sequence(t: f64, n_max: usize) -> Result<OpucSequence> {
    discrete_p2(t, n_max, &PrecisionContext::new(default_bits(n_max)))
}

impl OpucSequence {
    /// Rebuilds the derived determinant ladder from explicit coefficients.
    pub(crate) fn from_parts(t: f64, bits: u32, r: Vec<BigFloat>) -> Self {
        let log_d = accumulate_log_d(t, bits, &r);
        OpucSequence { t, bits, r, log_d }
    }

    /// Unmonitored forward propagation from a caller-supplied r_1; exists so
    /// consistency checks can observe how a corrupted seed poisons the
    /// determinant ladder.  Not a route to valid sequences.
    pub(crate) fn propagate_unchecked(t: f64, n_max: usize, bits: u32, r1: BigFloat) -> Self {
        let one = BigFloat::from_u64(1, bits);
        let tb = BigFloat::from_f64(t, bits);
        let mut r = vec![one.clone(), r1];
        for n in 1..n_max {
            let rn = &r[n];
            let denom = one.sub(&rn.mul(rn));
            let coeff = BigFloat::from_u64(n as u64, bits).div(&tb);
            r.push(coeff.mul(rn).div(&denom).neg().sub(&r[n - 1]));
        }
        Self::from_parts(t, bits, r)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Precision actually used (after any escalation).
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn n_max(&self) -> usize {
        self.r.len() - 1
    }

    /// r_n rounded to f64; values below the f64 range flush to zero.
    pub fn r(&self, n: usize) -> f64 {
        self.r[n].to_f64()
    }

    /// r_n at working precision.
    pub fn r_big(&self, n: usize) -> &BigFloat {
        &self.r[n]
    }

    /// log D_l, available for l up to n_max + 1.
    pub fn log_d(&self, l: usize) -> f64 {
        self.log_d[l]
    }

    /// D_l = exp(log D_l); may overflow f64 at large t·l, in which case the
    /// log accessor remains the usable form.
    pub fn d(&self, l: usize) -> f64 {
        self.log_d[l].exp()
    }

    /// Diagnostic dump, one row per coefficient index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,n,r,logD\n");
        for n in 0..=self.n_max() {
            out.push_str(&format!(
                "{},{},{:.11e},{:.11e}\n",
                self.t,
                n,
                self.r(n),
                self.log_d[n]
            ));
        }
        out
    }
}

/// Values of π_n and π_n* at one point, with optional derivatives.
#[derive(Debug, Clone, Copy)]
pub struct PolyPair {
    pub pi: Complex64,
    pub pi_star: Complex64,
    pub d_pi: Option<Complex64>,
    pub d_pi_star: Option<Complex64>,
}

/// Evaluates π_n(z) and π_n*(z) by the coupled recurrences
/// π_{k+1} = z π_k + r_{k+1} π_k*, π_{k+1}* = r_{k+1} z π_k + π_k*.
/// With `with_derivative` the closed-form first derivatives are attached;
/// they involve 1/z and 1/z² and the coefficient r_{n+1}, so they require
/// z ≠ 0 and n < n_max.
pub fn pi_eval(seq: &OpucSequence, n: usize, z: Complex64, with_derivative: bool) -> Result<PolyPair> {
    if n > seq.n_max() {
        return Err(Error::Domain(format!(
            "polynomial degree {n} exceeds the sequence length {}",
            seq.n_max()
        )));
    }
    let mut pi = Complex64::new(1.0, 0.0);
    let mut pi_star = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let rk = seq.r(k + 1);
        let next_pi = z * pi + rk * pi_star;
        let next_star = rk * z * pi + pi_star;
        pi = next_pi;
        pi_star = next_star;
    }
    if !with_derivative {
        return Ok(PolyPair { pi, pi_star, d_pi: None, d_pi_star: None });
    }
    if z.norm() == 0.0 {
        return Err(Error::Domain(
            "polynomial derivatives contain 1/z and 1/z^2 and cannot be evaluated at z = 0"
                .into(),
        ));
    }
    if n + 1 > seq.n_max() {
        return Err(Error::Domain(format!(
            "derivative at degree {n} needs coefficient {} beyond the sequence length {}",
            n + 1,
            seq.n_max()
        )));
    }
    let t = seq.t;
    let rn = seq.r(n);
    let rn1 = seq.r(n + 1);
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let d_pi = (n as f64 * inv + t * inv2 - rn1 * rn * t * inv) * pi
        + (rn1 * t * inv - rn * t * inv2) * pi_star;
    let d_pi_star = (-rn1 * t * inv + rn * t) * pi + (-t + rn1 * rn * t * inv) * pi_star;
    Ok(PolyPair { pi, pi_star, d_pi: Some(d_pi), d_pi_star: Some(d_pi_star) })
}

/// π_n(x) and π_n*(x) at working precision for real x.
fn pi_eval_big(seq: &OpucSequence, n: usize, x: &BigFloat) -> (BigFloat, BigFloat) {
    let bits = seq.bits;
    let mut pi = BigFloat::from_u64(1, bits);
    let mut pi_star = BigFloat::from_u64(1, bits);
    for k in 0..n {
        let rk = &seq.r[k + 1];
        let next_pi = x.mul(&pi).add(&rk.mul(&pi_star));
        let next_star = rk.mul(&x.mul(&pi)).add(&pi_star);
        pi = next_pi;
        pi_star = next_star;
    }
    (pi, pi_star)
}

/// dπ_n/dx at working precision for real x ≠ 0, via the closed-form
/// derivative in terms of π_n, π_n*, r_n, and r_{n+1}.
fn pi_deriv_big(seq: &OpucSequence, n: usize, x: &BigFloat) -> BigFloat {
    let bits = seq.bits;
    let (pi, pi_star) = pi_eval_big(seq, n, x);
    let t = BigFloat::from_f64(seq.t, bits);
    let rn = &seq.r[n];
    let rn1 = &seq.r[n + 1];
    let one = BigFloat::from_u64(1, bits);
    let inv = one.div(x);
    let inv2 = inv.mul(&inv);
    let nb = BigFloat::from_u64(n as u64, bits);
    let coeff_pi = nb
        .mul(&inv)
        .add(&t.mul(&inv2))
        .sub(&rn1.mul(rn).mul(&t).mul(&inv));
    let coeff_star = rn1.mul(&t).mul(&inv).sub(&rn.mul(&t).mul(&inv2));
    coeff_pi.mul(&pi).add(&coeff_star.mul(&pi_star))
}

/// Reciprocal-line detection band for the bordered determinant: inside the
/// band the generic quotient divides by an unusably small 1 − α₊α₋.
const DEGENERATE_BAND: f64 = 1e-8;
/// Within this distance of α₊α₋ = 1 the rates are treated as exactly
/// reciprocal and the limit formula applies.
const RECIPROCAL_TOL: f64 = 1e-12;

/// D̃_l / D_l at working precision.  Generic branch: the quotient
/// [π_l*(−α₊)π_l*(−α₋) − α₊α₋ π_l(−α₊)π_l(−α₋)] / (1 − α₊α₋).  On the
/// reciprocal line α₊α₋ = 1 the limit value
/// (1 − l)π_l(−α)π_l(−α⁻¹) − α π_l'(−α)π_l(−α⁻¹) − α⁻¹ π_l(−α)π_l'(−α⁻¹)
/// replaces it.
fn tilde_quotient(seq: &OpucSequence, l: usize, alpha_plus: f64, alpha_minus: f64) -> Result<BigFloat> {
    let bits = seq.bits;
    let p = alpha_plus * alpha_minus;
    if (1.0 - p).abs() < DEGENERATE_BAND {
        if (p - 1.0).abs() > RECIPROCAL_TOL {
            return Err(Error::Accuracy(format!(
                "boundary rates with alpha_plus*alpha_minus = {p} sit inside the \
                 ill-conditioned band around 1; only exactly reciprocal rates are \
                 supported there"
            )));
        }
        if l + 1 > seq.n_max() {
            return Err(Error::Domain(format!(
                "reciprocal-line quotient at l={l} needs coefficient {} beyond the \
                 sequence length {}",
                l + 1,
                seq.n_max()
            )));
        }
        let alpha = BigFloat::from_f64(alpha_plus, bits);
        let one = BigFloat::from_u64(1, bits);
        let alpha_inv = one.div(&alpha);
        let x1 = alpha.neg();
        let x2 = alpha_inv.neg();
        let (pi1, _) = pi_eval_big(seq, l, &x1);
        let (pi2, _) = pi_eval_big(seq, l, &x2);
        let d1 = pi_deriv_big(seq, l, &x1);
        let d2 = pi_deriv_big(seq, l, &x2);
        let lead = BigFloat::from_i64(1 - l as i64, bits).mul(&pi1).mul(&pi2);
        return Ok(lead
            .sub(&alpha.mul(&d1).mul(&pi2))
            .sub(&alpha_inv.mul(&pi1).mul(&d2)));
    }
    if l > seq.n_max() {
        return Err(Error::Domain(format!(
            "bordered determinant at l={l} exceeds the sequence length {}",
            seq.n_max()
        )));
    }
    let xp = BigFloat::from_f64(-alpha_plus, bits);
    let xm = BigFloat::from_f64(-alpha_minus, bits);
    let (pi_p, star_p) = pi_eval_big(seq, l, &xp);
    let (pi_m, star_m) = pi_eval_big(seq, l, &xm);
    let pb = BigFloat::from_f64(alpha_plus, bits).mul(&BigFloat::from_f64(alpha_minus, bits));
    let one = BigFloat::from_u64(1, bits);
    let num = star_p.mul(&star_m).sub(&pb.mul(&pi_p).mul(&pi_m));
    Ok(num.div(&one.sub(&pb)))
}

fn check_rate(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!(
            "boundary rate {name} must be finite and nonnegative, got {v}"
        )));
    }
    Ok(())
}

/// Bordered Toeplitz determinant
/// D̃_l = ⟨∏ (1 + α₊ e^{iθ_j})(1 + α₋ e^{−iθ_j}) exp(2t Σ cos θ_j)⟩_{U(l)}.
pub fn tilde_d(seq: &OpucSequence, l: usize, alpha_plus: f64, alpha_minus: f64) -> Result<f64> {
    check_rate("alpha_plus", alpha_plus)?;
    check_rate("alpha_minus", alpha_minus)?;
    let q = tilde_quotient(seq, l, alpha_plus, alpha_minus)?;
    Ok(q.to_f64() * seq.d(l))
}

/// Independent route to the same bordered determinant: the weight has
/// Fourier coefficients c_k = (1 + α₊α₋) I_k(2t) + α₊ I_{k−1}(2t)
/// + α₋ I_{k+1}(2t), and D̃_l = det[c_{j−k}] evaluated by exact-pivot LU at
/// the requested precision.
pub fn tilde_d_toeplitz(t: f64, alpha_plus: f64, alpha_minus: f64, l: usize, bits: u32) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("intensity t must be positive, got {t}")));
    }
    check_rate("alpha_plus", alpha_plus)?;
    check_rate("alpha_minus", alpha_minus)?;
    if l == 0 {
        return Ok(1.0);
    }
    let two_t = BigFloat::from_f64(2.0 * t, bits);
    let bessel: Vec<BigFloat> = (0..=l as u32).map(|k| bessel_i(k, &two_t, bits)).collect();
    let ap = BigFloat::from_f64(alpha_plus, bits);
    let am = BigFloat::from_f64(alpha_minus, bits);
    let w0 = BigFloat::from_u64(1, bits).add(&ap.mul(&am));
    let coeff = |k: i64| -> BigFloat {
        let i = |m: i64| bessel[m.unsigned_abs() as usize].clone();
        w0.mul(&i(k)).add(&ap.mul(&i(k - 1))).add(&am.mul(&i(k + 1)))
    };
    let a: Vec<Vec<BigFloat>> = (0..l)
        .map(|j| (0..l).map(|k| coeff(j as i64 - k as i64)).collect())
        .collect();
    Ok(det_lu(a).to_f64())
}

/// log det[I_{j−k}(2t)] of order l by exact-pivot LU at the requested
/// precision: the determinant route to log D_l, independent of the
/// recurrence route accumulated inside an `OpucSequence`.
pub fn log_d_toeplitz(t: f64, l: usize, bits: u32) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("intensity t must be positive, got {t}")));
    }
    if l == 0 {
        return Ok(0.0);
    }
    let two_t = BigFloat::from_f64(2.0 * t, bits);
    let bessel: Vec<BigFloat> = (0..l as u32).map(|k| bessel_i(k, &two_t, bits)).collect();
    let a: Vec<Vec<BigFloat>> = (0..l)
        .map(|j| {
            (0..l)
                .map(|k| bessel[(j as i64 - k as i64).unsigned_abs() as usize].clone())
                .collect()
        })
        .collect();
    let det = det_lu(a);
    if det.signum() <= 0 {
        return Err(Error::Accuracy(format!(
            "Toeplitz determinant of order {l} at t={t} evaluated nonpositive; \
             increase precision"
        )));
    }
    Ok(det.ln_f64())
}

/// Distribution of the longest up/right path through a rate-t² Poisson bulk
/// with rate α₊t points added on the bottom edge and rate α₋t on the left
/// edge.  `with_origin` additionally convolves in the geometric(α₊α₋) corner
/// contribution; both forms share the bordered determinants:
/// with origin      (1 − α₊α₋) e^{−(α₊+α₋)t − t²} D̃_l,
/// without origin   e^{−(α₊+α₋)t − t²} (D̃_l − α₊α₋ D̃_{l−1}).
pub fn boundary_cdf(t: f64, alpha_plus: f64, alpha_minus: f64, l: usize, with_origin: bool) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("intensity t must be positive, got {t}")));
    }
    check_rate("alpha_plus", alpha_plus)?;
    check_rate("alpha_minus", alpha_minus)?;
    let p = alpha_plus * alpha_minus;
    if p >= 1.0 {
        return Err(Error::Domain(format!(
            "geometric corner weight needs alpha_plus*alpha_minus < 1, got {p}"
        )));
    }
    let n_max = l + 1;
    let seq = discrete_p2(t, n_max, &PrecisionContext::new(default_bits(n_max)))?;
    let log_pref = -(alpha_plus + alpha_minus) * t - t * t;
    let log_term = |ll: usize| -> Result<f64> {
        let q = tilde_quotient(&seq, ll, alpha_plus, alpha_minus)?;
        if q.signum() <= 0 {
            return Err(Error::Accuracy(format!(
                "bordered determinant quotient at l={ll} evaluated nonpositive"
            )));
        }
        Ok(log_pref + seq.log_d(ll) + q.ln_f64())
    };
    let value = if with_origin {
        (1.0 - p) * log_term(l)?.exp()
    } else if l == 0 {
        log_pref.exp()
    } else {
        log_term(l)?.exp() - p * log_term(l - 1)?.exp()
    };
    Ok(value.clamp(0.0, 1.0))
}
