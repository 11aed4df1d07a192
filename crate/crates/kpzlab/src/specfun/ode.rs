//! Adaptive Dormand-Prince 5(4) integrator with dense output.

use crate::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Accepted steps of one integration: times, states, and state derivatives,
/// in integration order (decreasing times for a backward run).
pub struct OdeSolution {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub dy: Vec<Vec<f64>>,
}

impl OdeSolution {
    pub fn last(&self) -> &[f64] {
        self.y.last().unwrap()
    }

    /// Cubic Hermite interpolation between the bracketing accepted steps;
    /// O(h^4) consistent with the integrator's own accuracy at tight
    /// tolerances. `t` must lie within the integration range.
    pub fn sample(&self, t: f64) -> Vec<f64> {
        let n = self.t.len();
        assert!(n >= 1);
        if n == 1 {
            return self.y[0].clone();
        }
        let forward = self.t[n - 1] >= self.t[0];
        let lo = self.t[0].min(self.t[n - 1]);
        let hi = self.t[0].max(self.t[n - 1]);
        assert!(t >= lo - 1e-9 && t <= hi + 1e-9, "sample({t}) outside [{lo}, {hi}]");
        let i = if forward {
            self.t.partition_point(|&ti| ti < t).clamp(1, n - 1)
        } else {
            self.t.partition_point(|&ti| ti > t).clamp(1, n - 1)
        };
        let (t0, t1) = (self.t[i - 1], self.t[i]);
        let h = t1 - t0;
        if h == 0.0 {
            return self.y[i].clone();
        }
        let u = ((t - t0) / h).clamp(0.0, 1.0);
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        (0..self.y[0].len())
            .map(|k| {
                h00 * self.y[i - 1][k]
                    + h10 * h * self.dy[i - 1][k]
                    + h01 * self.y[i][k]
                    + h11 * h * self.dy[i][k]
            })
            .collect()
    }
}

/// Integrate y' = f(t, y) from t0 to t1 (either direction) with mixed
/// error control err_i <= atol + rtol * |y_i| per step. `max_step` caps the
/// accepted step size (pass f64::INFINITY for no cap); a finite cap keeps
/// the stored nodes dense enough for `sample` to interpolate at full
/// accuracy, since cubic Hermite interpolation is only fourth order.
pub fn integrate_ode(
    f: &mut dyn FnMut(f64, &[f64], &mut [f64]),
    t0: f64,
    t1: f64,
    y0: &[f64],
    rtol: f64,
    atol: f64,
    max_step: f64,
) -> Result<OdeSolution> {
    let dim = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; dim]; 7];
    f(t, &y, &mut k[0]);
    let mut sol = OdeSolution {
        t: vec![t],
        y: vec![y.clone()],
        dy: vec![k[0].clone()],
    };
    if t1 == t0 {
        return Ok(sol);
    }
    assert!(max_step > 0.0, "max_step must be positive");
    let dir = (t1 - t0).signum();
    let span = (t1 - t0).abs();
    let mut h = dir * (span * 0.01).min(max_step);
    let mut ytmp = vec![0.0; dim];
    let mut y5 = vec![0.0; dim];
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::Accuracy(format!(
                "ODE integrator exceeded step limit near t = {t}"
            )));
        }
        if (t1 - (t + h)) * dir < 0.0 {
            h = t1 - t;
        }
        for s in 1..7 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                ytmp[i] = y[i] + h * acc;
            }
            let ts = t + C[s] * h;
            let (head, tail) = k.split_at_mut(s);
            let _ = head;
            f(ts, &ytmp, &mut tail[0]);
        }
        // k[6] is f at the 5th-order solution (FSAL), and ytmp currently
        // holds that solution because A[6] equals B5's first six weights.
        y5.copy_from_slice(&ytmp);
        let mut errsq = 0.0;
        for i in 0..dim {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += (B5[j] - B4[j]) * kj[i];
            }
            e *= h;
            let sc = atol + rtol * y[i].abs().max(y5[i].abs());
            errsq += (e / sc) * (e / sc);
        }
        let err = (errsq / dim as f64).sqrt();
        if err <= 1.0 {
            t += h;
            y.copy_from_slice(&y5);
            k.swap(0, 6); // FSAL reuse
            sol.t.push(t);
            sol.y.push(y.clone());
            sol.dy.push(k[0].clone());
            if (t1 - t) * dir <= 0.0 || (t1 - t).abs() < 1e-14 * span.max(1.0) {
                return Ok(sol);
            }
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h.abs() > max_step {
            h = dir * max_step;
        }
        if h.abs() < 1e-14 * span.max(1.0) {
            return Err(Error::Accuracy(format!(
                "ODE step size collapsed near t = {t}"
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_exponential_decay() {
        let sol = integrate_ode(
            &mut |_, y, dy| dy[0] = -y[0],
            0.0,
            5.0,
            &[1.0],
            1e-12,
            1e-14,
            f64::INFINITY,
        )
        .unwrap();
        let got = sol.last()[0];
        assert!((got - (-5.0f64).exp()).abs() < 1e-11);
    }

    #[test]
    fn unit_harmonic_oscillator_energy() {
        let sol = integrate_ode(
            &mut |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            0.0,
            20.0,
            &[1.0, 0.0],
            1e-11,
            1e-13,
            f64::INFINITY,
        )
        .unwrap();
        let e = sol.last()[0].powi(2) + sol.last()[1].powi(2);
        assert!((e - 1.0).abs() < 1e-9);
        assert!((sol.last()[0] - 20.0f64.cos()).abs() < 1e-8);
    }

    #[test]
    fn unit_backward_integration() {
        // y' = y backwards from t=2 to t=0 starting at e^2 recovers 1.
        let sol = integrate_ode(
            &mut |_, y, dy| dy[0] = y[0],
            2.0,
            0.0,
            &[2.0f64.exp()],
            1e-12,
            1e-14,
            f64::INFINITY,
        )
        .unwrap();
        assert!((sol.last()[0] - 1.0).abs() < 1e-10);
        assert!(sol.t[0] > *sol.t.last().unwrap());
    }

    #[test]
    fn unit_dense_output() {
        let sol = integrate_ode(
            &mut |t, _, dy| dy[0] = t.cos(),
            0.0,
            6.0,
            &[0.0],
            1e-11,
            1e-13,
            0.02,
        )
        .unwrap();
        for &t in &[0.3, 1.7, 2.9, 4.4, 5.9] {
            let got = sol.sample(t)[0];
            assert!((got - t.sin()).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn unit_dense_output_backward() {
        let sol = integrate_ode(
            &mut |t, _, dy| dy[0] = 2.0 * t,
            3.0,
            -1.0,
            &[9.0],
            1e-12,
            1e-14,
            f64::INFINITY,
        )
        .unwrap();
        for &t in &[-0.5, 0.0, 1.25, 2.75] {
            let got = sol.sample(t)[0];
            assert!((got - t * t).abs() < 1e-9, "t={t}");
        }
    }
}
