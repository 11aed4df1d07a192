//! Quadrature rules: uniform rules on periodic boxes and Gauss-Legendre.

use std::f64::consts::PI;

/// Integrate f over (-pi, pi)^d with an n-point uniform rule on each axis
/// (midpoint-offset grid). For smooth periodic integrands the rule is
/// spectrally accurate; it integrates trigonometric polynomials of degree
/// below n exactly.
pub fn periodic_quadrature(d: usize, n: usize, f: &mut dyn FnMut(&[f64]) -> f64) -> f64 {
    assert!((1..=4).contains(&d), "periodic_quadrature supports 1..=4 dims");
    assert!(n >= 2);
    let h = 2.0 * PI / n as f64;
    let nodes: Vec<f64> = (0..n).map(|i| -PI + (i as f64 + 0.5) * h).collect();
    let mut idx = vec![0usize; d];
    let mut theta = vec![0.0f64; d];
    let mut sum = 0.0;
    'outer: loop {
        for (t, &i) in theta.iter_mut().zip(idx.iter()) {
            *t = nodes[i];
        }
        sum += f(&theta);
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == d {
                break 'outer;
            }
        }
    }
    sum * h.powi(d as i32)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], by
/// Newton iteration on P_n from the Chebyshev-like initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    for i in 0..n {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(t) and P_n'(t).
            let mut p0 = 1.0;
            let mut p1 = t;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { t } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (t * pn - pm) / (t * t - 1.0);
            let dt = pn / dp;
            t -= dt;
            if dt.abs() < 1e-15 {
                break;
            }
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

/// Integrate f on [a, b] with an n-point Gauss-Legendre rule.
pub fn gl_integrate(a: f64, b: f64, n: usize, f: &mut dyn FnMut(f64) -> f64) -> f64 {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..n {
        s += w[i] * f(mid + half * x[i]);
    }
    s * half
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel::bessel_i_f64;

    #[test]
    fn unit_periodic_bessel_moment() {
        // (1/2pi) int exp(2t cos theta) dtheta = I_0(2t)
        for &t in &[0.5, 1.0, 2.0] {
            let got = periodic_quadrature(1, 64, &mut |th| (2.0 * t * th[0].cos()).exp())
                / (2.0 * PI);
            let want = bessel_i_f64(0, 2.0 * t);
            assert!((got - want).abs() < 1e-13 * want, "t={t}");
        }
    }

    #[test]
    fn unit_periodic_vandermonde_2d() {
        // mean of |e^{i a} - e^{i b}|^2 = 2 over the torus
        let got = periodic_quadrature(2, 32, &mut |th| {
            let d = 2.0 - 2.0 * (th[0] - th[1]).cos();
            d
        }) / (2.0 * PI).powi(2);
        assert!((got - 2.0).abs() < 1e-13);
    }

    #[test]
    fn unit_periodic_exact_for_trig_polys() {
        // cos(k theta) integrates to 0 for 1 <= k < n.
        for k in 1..16 {
            let got = periodic_quadrature(1, 16, &mut |th| (k as f64 * th[0]).cos());
            assert!(got.abs() < 1e-12, "k={k}: {got}");
        }
    }

    #[test]
    fn unit_gauss_legendre_polynomials() {
        // n-point rule is exact through degree 2n-1.
        let (x, w) = gauss_legendre(5);
        for deg in 0..10u32 {
            let got: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(deg as i32)).sum();
            let want = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-14, "deg={deg}");
        }
    }

    #[test]
    fn unit_gauss_legendre_exp() {
        let got = gl_integrate(-1.0, 1.0, 20, &mut |x| x.exp());
        let want = 1.0f64.exp() - (-1.0f64).exp();
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn unit_gauss_legendre_weights_sum() {
        for n in [1, 2, 7, 40, 60, 120] {
            let (_, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
        }
    }
}
