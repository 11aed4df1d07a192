//! The Hastings-McLeod solution of Painlevé II and the Tracy-Widom
//! distributions for the unitary, orthogonal, and symplectic symmetry
//! classes.
//!
//! q'' = s q + 2 q³ is integrated backward from the Airy tail q ~ -Ai(s),
//! carrying along U(s) = -∫_s^∞ q, W(s) = ∫_s^∞ q², and
//! V(s) = ∫_s^∞ (t - s) q² as extra components of one first-order system,
//! seeded at s_max with closed-form Airy tail integrals.  Deep grids are then
//! refined by a Numerov boundary-value pass: shooting detects instability and
//! supplies the initial iterate, while the collocation solve removes the
//! left-edge drift that double-precision shooting cannot avoid.  The
//! distributions are F_GUE = e^{-V}, F_GOE = e^{-(U+V)/2}, and
//! F_GSE = √F_GUE · cosh(U/2).  An Airy-kernel Fredholm determinant
//! evaluated by Nyström quadrature provides an independent route to F_GUE.

use crate::error::{Error, Result};
use crate::specfun::{airy_ai, det_lu, gauss_legendre, gl_integrate, integrate_ode, CubicSpline};

pub const DEFAULT_S_MIN: f64 = -10.0;
pub const DEFAULT_S_MAX: f64 = 10.0;
pub const GRID_STEP: f64 = 0.01;
const DEFAULT_TOL: f64 = 1e-13;
// Internal step cap for the shooting predictor, finer than the output grid.
// Truncation committed while q rides the decaying Airy tail is *relative* to
// the local solution and is re-amplified by the backward-growing mode, so the
// floor it sets on the left-edge drift scales like max_step^5 and does not
// respond to the tolerance knob; 0.01 would push the drift over the blow-up
// envelope near s = -9.7 before the predictor reaches -10.
const MAX_STEP: f64 = 2.5e-3;

/// ∫_z^∞ Ai(t)² dt in closed form.
fn airy_sq_tail(z: f64) -> f64 {
    let (ai, aip) = airy_ai(z);
    aip * aip - z * ai * ai
}

/// ∫_z^∞ t · Ai(t)² dt in closed form.
fn airy_t_sq_tail(z: f64) -> f64 {
    let (ai, aip) = airy_ai(z);
    -(z * z * ai * ai - z * aip * aip + ai * aip) / 3.0
}

/// ∫_z^∞ Ai(t) dt by panel quadrature; the integrand decays like
/// exp(-(2/3)t^{3/2}), so a truncated window is exhaustive.
fn airy_tail(z: f64) -> f64 {
    let mut f = |t: f64| airy_ai(t).0;
    gl_integrate(z, z + 4.0, 60, &mut f)
        + gl_integrate(z + 4.0, z + 12.0, 60, &mut f)
        + gl_integrate(z + 12.0, z + 30.0, 60, &mut f)
}

/// Solution values on a uniform s-grid: the transcendent q, its derivative,
/// and the three tail integrals that generate the distributions.  Built
/// once, immutable afterwards; point queries go through cubic splines.
#[derive(Debug)]
pub struct PainleveGrid {
    s: Vec<f64>,
    q: Vec<f64>,
    qp: Vec<f64>,
    u: Vec<f64>,
    w: Vec<f64>,
    v: Vec<f64>,
    spline_q: CubicSpline,
    spline_u: CubicSpline,
    spline_w: CubicSpline,
    spline_v: CubicSpline,
    tol: f64,
}

fn rhs(s: f64, y: &[f64], dy: &mut [f64]) {
    let q = y[0];
    dy[0] = y[1];
    dy[1] = s * q + 2.0 * q * q * q;
    dy[2] = q;
    dy[3] = -q * q;
    dy[4] = -y[3];
}

/// The Hastings-McLeod trajectory stays below √(-s/2) + O(1); values far
/// above that envelope mean the backward integration has left it.
fn blow_up(s: f64, q: f64) -> bool {
    !q.is_finite() || q.abs() > 6.0 * (1.0 + (-s).max(0.0) / 2.0).sqrt() + 10.0
}

/// Four-term left asymptote
/// q ~ -√(-s/2)·(1 + (1/8)s⁻³ - (73/128)s⁻⁶ + (10657/1024)s⁻⁹),
/// truncation error below 1e-9 for s ≤ -10.
fn left_asymptote(s: f64) -> f64 {
    let s3 = s * s * s;
    let s6 = s3 * s3;
    let s9 = s6 * s3;
    -(-s / 2.0).sqrt() * (1.0 + 0.125 / s3 - 73.0 / 128.0 / s6 + 10657.0 / 1024.0 / s9)
}

/// Newton iteration on the Numerov discretization of q'' = sq + 2q³ over a
/// grid padded to the far left.  Backward shooting drifts off the connection
/// solution near the left edge (double-precision local errors are amplified
/// like exp((2√2/3)|s|^{3/2})), but as a boundary-value problem the solution
/// is well conditioned: Dirichlet data pin the Airy tail at s_max exactly and
/// the parabolic asymptote at the pad node, whose small truncation error
/// decays like exp(-∫√(2|s|)) before it can reach the kept range.  Returns
/// the padded solution and the number of pad nodes below s_min.
fn numerov_polish(s_min: f64, s_max: f64, h: f64, q_shoot: &[f64]) -> Result<(Vec<f64>, usize)> {
    let pad_target = (s_min - 4.0).min(-12.0);
    let pad = ((s_min - pad_target) / h).round() as usize;
    let m = pad + q_shoot.len();
    let node = |j: usize| s_max - h * (m - 1 - j) as f64;
    let mut q = vec![0.0; m];
    for (j, slot) in q.iter_mut().enumerate() {
        let s = node(j);
        *slot = if j >= pad && s > -6.0 {
            q_shoot[j - pad]
        } else {
            left_asymptote(s)
        };
    }
    q[0] = left_asymptote(node(0));
    q[m - 1] = -airy_ai(s_max).0;
    let g = |s: f64, q: f64| s * q + 2.0 * q * q * q;
    let gp = |s: f64, q: f64| s + 6.0 * q * q;
    let c = h * h / 12.0;
    let mut residual = vec![0.0; m];
    let mut delta = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut upper = vec![0.0; m];
    for _ in 0..40 {
        for i in 1..m - 1 {
            let (sm, si, sp) = (node(i - 1), node(i), node(i + 1));
            residual[i] = q[i - 1] - 2.0 * q[i] + q[i + 1]
                - c * (g(sm, q[i - 1]) + 10.0 * g(si, q[i]) + g(sp, q[i + 1]));
        }
        // Thomas solve of J·δ = -residual on the interior (δ = 0 at both ends).
        let sub = |i: usize| 1.0 - c * gp(node(i - 1), q[i - 1]);
        let sup = |i: usize| 1.0 - c * gp(node(i + 1), q[i + 1]);
        diag[1] = -2.0 - 10.0 * c * gp(node(1), q[1]);
        delta[1] = -residual[1];
        for i in 2..m - 1 {
            let w = sub(i) / diag[i - 1];
            diag[i] = -2.0 - 10.0 * c * gp(node(i), q[i]) - w * sup(i - 1);
            delta[i] = -residual[i] - w * delta[i - 1];
            upper[i - 1] = sup(i - 1);
        }
        delta[m - 2] /= diag[m - 2];
        for i in (1..m - 2).rev() {
            delta[i] = (delta[i] - upper[i] * delta[i + 1]) / diag[i];
        }
        let mut step = 0.0_f64;
        for i in 1..m - 1 {
            q[i] += delta[i];
            step = step.max(delta[i].abs());
        }
        if step < 1e-13 {
            return Ok((q, pad));
        }
    }
    Err(Error::Accuracy(
        "collocation refinement of the connection trajectory did not converge".into(),
    ))
}

/// ∫_{s_i}^{s_max} f dt at every grid node, by a sliding cubic Newton-Cotes
/// panel rule (4th order) accumulated from the right end.
pub(crate) fn cumulative_integral_right(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut c = vec![0.0; n];
    for i in (0..n - 1).rev() {
        let panel = if i == 0 {
            h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0
        } else if i + 2 == n {
            h * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) / 24.0
        } else {
            h * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]) / 24.0
        };
        c[i] = c[i + 1] + panel;
    }
    c
}

/// Integrates the connection problem backward from `s_max` (seeded on the
/// Airy tail) down to `s_min` on a step-0.01 grid.
pub fn hastings_mcleod(s_min: f64, s_max: f64, tol: f64) -> Result<PainleveGrid> {
    hastings_mcleod_with_step(s_min, s_max, tol, GRID_STEP)
}

/// Same solve on a caller-chosen uniform grid step (used for grid-refinement
/// cross-checks).
pub fn hastings_mcleod_with_step(
    s_min: f64,
    s_max: f64,
    tol: f64,
    step: f64,
) -> Result<PainleveGrid> {
    if !(step > 0.0) || !(1e-3..=0.05).contains(&step) {
        return Err(Error::Domain(format!(
            "grid step {step} is outside the supported band [1e-3, 0.05]"
        )));
    }
    if !(s_max >= 8.0) {
        return Err(Error::Domain(format!(
            "seed point s_max = {s_max} is outside the Airy tail regime (needs >= 8)"
        )));
    }
    if !(tol <= 1e-9) || !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance {tol} too loose for the connection problem (needs <= 1e-9)"
        )));
    }
    if !(s_min < s_max) || !s_min.is_finite() {
        return Err(Error::Domain(format!("invalid range [{s_min}, {s_max}]")));
    }
    let n = ((s_max - s_min) / step).round() as usize;
    let (ai, aip) = airy_ai(s_max);
    // Descending fill, reversed at the end.
    let mut s_desc = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    let seed = [
        -ai,
        -aip,
        airy_tail(s_max),
        airy_sq_tail(s_max),
        airy_t_sq_tail(s_max) - s_max * airy_sq_tail(s_max),
    ];
    s_desc.push(s_max);
    states.push(seed.to_vec());
    let mut y = seed.to_vec();
    for i in 1..=n {
        let s_from = s_max - step * (i - 1) as f64;
        let s_to = if i == n { s_min } else { s_max - step * i as f64 };
        let step = integrate_ode(&mut rhs, s_from, s_to, &y, tol, tol * 1e-3, MAX_STEP);
        let sol = match step {
            Ok(sol) => sol,
            Err(e) => {
                return Err(Error::Instability {
                    message: format!(
                        "backward integration failed between s = {s_from} and {s_to}: {e}; \
                         the trajectory is trusted down to s = {s_from}"
                    ),
                    last_good: i - 1,
                })
            }
        };
        y = sol.last().to_vec();
        if blow_up(s_to, y[0]) {
            return Err(Error::Instability {
                message: format!(
                    "trajectory left the bounded envelope at s = {s_to} (q = {}); \
                     the grid is trusted down to s = {s_from}",
                    y[0]
                ),
                last_good: i - 1,
            });
        }
        s_desc.push(s_to);
        states.push(y.clone());
    }
    let len = states.len();
    let mut s = vec![0.0; len];
    let mut q = vec![0.0; len];
    let mut qp = vec![0.0; len];
    let mut u = vec![0.0; len];
    let mut w = vec![0.0; len];
    let mut v = vec![0.0; len];
    for (k, (sk, st)) in s_desc.iter().zip(states.iter()).enumerate() {
        let j = len - 1 - k;
        s[j] = *sk;
        q[j] = st[0];
        qp[j] = st[1];
        u[j] = st[2];
        w[j] = st[3];
        v[j] = st[4];
    }
    if s_min < -2.0 {
        // Deep grids: replace the drifting shot by the collocation solution,
        // then rebuild the derivative and the tail integrals from it.
        let (q_full, pad) = numerov_polish(s_min, s_max, step, &q)?;
        let m = q_full.len();
        let h = step;
        for j in 0..len {
            let i = pad + j;
            q[j] = q_full[i];
            qp[j] = if i + 2 < m {
                (q_full[i - 2] - 8.0 * q_full[i - 1] + 8.0 * q_full[i + 1] - q_full[i + 2])
                    / (12.0 * h)
            } else if i + 2 == m {
                (3.0 * q_full[i - 4] - 16.0 * q_full[i - 3] + 36.0 * q_full[i - 2]
                    - 48.0 * q_full[i - 1]
                    + 25.0 * q_full[i])
                    / (12.0 * h)
            } else {
                -airy_ai(s_max).1
            };
        }
        let (u_seed, w_seed, v_seed) = (seed[2], seed[3], seed[4]);
        let minus_q: Vec<f64> = q.iter().map(|&x| -x).collect();
        let q_sq: Vec<f64> = q.iter().map(|&x| x * x).collect();
        let t_q_sq: Vec<f64> = s.iter().zip(&q_sq).map(|(&t, &x)| t * x).collect();
        let cum_u = cumulative_integral_right(&minus_q, h);
        let cum_w = cumulative_integral_right(&q_sq, h);
        let cum_tw = cumulative_integral_right(&t_q_sq, h);
        for j in 0..len {
            u[j] = u_seed + cum_u[j];
            w[j] = w_seed + cum_w[j];
            v[j] = cum_tw[j] - s[j] * cum_w[j] + v_seed + (s_max - s[j]) * w_seed;
        }
    }
    let spline_q = CubicSpline::new(s.clone(), q.clone());
    let spline_u = CubicSpline::new(s.clone(), u.clone());
    let spline_w = CubicSpline::new(s.clone(), w.clone());
    let spline_v = CubicSpline::new(s.clone(), v.clone());
    Ok(PainleveGrid { s, q, qp, u, w, v, spline_q, spline_u, spline_w, spline_v, tol })
}

/// Default desk-scale grid: [-10, 10] at shooting tolerance 1e-13.
///
/// The tolerance is tighter than the interior accuracy would suggest because
/// backward integration amplifies accepted local errors by roughly
/// exp((2*sqrt(2)/3)|s|^(3/2)) by the time the predictor reaches the left
/// edge; at 1e-12 it leaves the blow-up envelope near -9.7 and the solve
/// fails before the collocation stage can refine it.
pub fn default_grid() -> Result<PainleveGrid> {
    hastings_mcleod(DEFAULT_S_MIN, DEFAULT_S_MAX, DEFAULT_TOL)
}

impl PainleveGrid {
    fn check_range(&self, s: f64) -> Result<()> {
        if !s.is_finite() || s < self.s[0] || s > self.s[self.s.len() - 1] {
            return Err(Error::Domain(format!(
                "query point {s} is outside the solved range [{}, {}]",
                self.s[0],
                self.s[self.s.len() - 1]
            )));
        }
        Ok(())
    }

    pub fn s_grid(&self) -> &[f64] {
        &self.s
    }

    pub fn q_grid(&self) -> &[f64] {
        &self.q
    }

    pub fn qp_grid(&self) -> &[f64] {
        &self.qp
    }

    pub fn u_grid(&self) -> &[f64] {
        &self.u
    }

    pub fn w_grid(&self) -> &[f64] {
        &self.w
    }

    pub fn v_grid(&self) -> &[f64] {
        &self.v
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// The transcendent q(s).
    pub fn q(&self, s: f64) -> Result<f64> {
        self.check_range(s)?;
        Ok(self.spline_q.eval(s))
    }

    /// U(s) = -∫_s^∞ q dt (positive since q < 0).
    pub fn u(&self, s: f64) -> Result<f64> {
        self.check_range(s)?;
        Ok(self.spline_u.eval(s))
    }

    /// W(s) = ∫_s^∞ q² dt.
    pub fn w(&self, s: f64) -> Result<f64> {
        self.check_range(s)?;
        Ok(self.spline_w.eval(s))
    }

    /// V(s) = ∫_s^∞ (t - s) q² dt.
    pub fn v(&self, s: f64) -> Result<f64> {
        self.check_range(s)?;
        Ok(self.spline_v.eval(s))
    }

    /// Unitary-class distribution e^{-V(s)}.
    pub fn f_gue(&self, s: f64) -> Result<f64> {
        Ok((-self.v(s)?).exp())
    }

    /// Orthogonal- and symplectic-class distributions from the same grid.
    pub fn f_goe_gse(&self, s: f64) -> Result<(f64, f64)> {
        let u = self.u(s)?;
        let v = self.v(s)?;
        let goe = (-(u + v) / 2.0).exp();
        let gse = (-v / 2.0).exp() * (u / 2.0).cosh();
        Ok((goe, gse))
    }

    pub fn f_goe(&self, s: f64) -> Result<f64> {
        Ok(self.f_goe_gse(s)?.0)
    }

    pub fn f_gse(&self, s: f64) -> Result<f64> {
        Ok(self.f_goe_gse(s)?.1)
    }

    /// Largest magnitude over interior nodes of the five-point-stencil
    /// residual |q'' - s q - 2 q³|.
    pub fn max_ode_residual(&self) -> f64 {
        let h = self.s[1] - self.s[0];
        let mut worst = 0.0_f64;
        for i in 2..self.s.len() - 2 {
            let dd = (-self.q[i - 2] + 16.0 * self.q[i - 1] - 30.0 * self.q[i]
                + 16.0 * self.q[i + 1]
                - self.q[i + 2])
                / (12.0 * h * h);
            let res = dd - self.s[i] * self.q[i] - 2.0 * self.q[i].powi(3);
            worst = worst.max(res.abs());
        }
        worst
    }

    /// Distribution table rows at a uniform step, 12 significant digits.
    pub fn tw_table_csv(&self, from: f64, to: f64, step: f64) -> Result<String> {
        if !(step > 0.0) || !(from <= to) {
            return Err(Error::Domain(format!(
                "table range [{from}, {to}] with step {step} is invalid"
            )));
        }
        let mut out = String::from("s,f_gue,f_goe,f_gse\n");
        let count = ((to - from) / step).round() as usize;
        for i in 0..=count {
            let s = from + step * i as f64;
            let gue = self.f_gue(s)?;
            let (goe, gse) = self.f_goe_gse(s)?;
            out.push_str(&format!("{s},{gue:.11e},{goe:.11e},{gse:.11e}\n"));
        }
        Ok(out)
    }
}

/// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y), with the confluent
/// diagonal value Ai'(x)² - x Ai(x)².
fn airy_kernel(x: f64, ax: (f64, f64), y: f64, ay: (f64, f64)) -> f64 {
    if x == y {
        ay.1 * ay.1 - x * ax.0 * ax.0
    } else {
        (ax.0 * ay.1 - ax.1 * ay.0) / (x - y)
    }
}

fn nystrom_det(s: f64, n: usize) -> f64 {
    // The kernel is numerically supported well inside (s, 16).
    let b = 16.0;
    let (nodes, weights) = gauss_legendre(n);
    let mid = (b + s) / 2.0;
    let half = (b - s) / 2.0;
    let x: Vec<f64> = nodes.iter().map(|t| mid + half * t).collect();
    let w: Vec<f64> = weights.iter().map(|wi| wi * half).collect();
    let airy: Vec<(f64, f64)> = x.iter().map(|&xi| airy_ai(xi)).collect();
    let sq: Vec<f64> = w.iter().map(|wi| wi.sqrt()).collect();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = airy_kernel(x[i], airy[i], x[j], airy[j]);
                    let delta = if i == j { 1.0 } else { 0.0 };
                    delta - sq[i] * k * sq[j]
                })
                .collect()
        })
        .collect();
    det_lu(a)
}

/// F_GUE(s) as the Fredholm determinant of the Airy kernel on (s, ∞),
/// discretized by Gauss-Legendre Nyström quadrature with an internal
/// node-doubling convergence check.
pub fn fredholm_oracle(s: f64) -> Result<f64> {
    if !(-8.0..=6.0).contains(&s) {
        return Err(Error::Domain(format!(
            "Fredholm route is supported on [-8, 6], got {s}"
        )));
    }
    let coarse = nystrom_det(s, 60);
    let fine = nystrom_det(s, 120);
    if (coarse - fine).abs() > 1e-8 {
        return Err(Error::Accuracy(format!(
            "Nyström doubling moved the determinant at s={s} by {}; nodes insufficient",
            (coarse - fine).abs()
        )));
    }
    Ok(fine)
}
