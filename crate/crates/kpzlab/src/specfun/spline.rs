//! Natural cubic spline interpolation.

/// Natural cubic spline through strictly increasing knots; second
/// derivatives vanish at both ends. Built by solving the tridiagonal
/// moment system with the Thomas algorithm.
#[derive(Debug)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>, // second derivatives at the knots
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 2, "spline needs at least two knots");
        assert_eq!(n, y.len());
        assert!(
            x.windows(2).all(|w| w[1] > w[0]),
            "spline knots must increase strictly"
        );
        let mut m = vec![0.0; n];
        if n > 2 {
            // Interior equations: h_{i-1} m_{i-1} + 2(h_{i-1}+h_i) m_i
            //   + h_i m_{i+1} = 6 (d_i - d_{i-1}) with d_i the slopes.
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut upper = vec![0.0; k];
            let mut lower = vec![0.0; k];
            let mut rhs = vec![0.0; k];
            for i in 0..k {
                let h0 = x[i + 1] - x[i];
                let h1 = x[i + 2] - x[i + 1];
                lower[i] = h0;
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
            }
            for i in 1..k {
                let w = lower[i] / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
            }
        }
        CubicSpline { x, y, m }
    }

    /// Evaluate at t, clamped to the knot range.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let t = t.clamp(self.x[0], self.x[n - 1]);
        let i = self.x.partition_point(|&xi| xi < t).clamp(1, n - 1);
        let (x0, x1) = (self.x[i - 1], self.x[i]);
        let h = x1 - x0;
        let a = (x1 - t) / h;
        let b = (t - x0) / h;
        a * self.y[i - 1]
            + b * self.y[i]
            + ((a * a * a - a) * self.m[i - 1] + (b * b * b - b) * self.m[i]) * h * h / 6.0
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }
}
