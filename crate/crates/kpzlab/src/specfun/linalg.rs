//! Generic LU determinant over f64, Complex64, and BigFloat.

use super::bigfloat::BigFloat;
use num_complex::Complex64;

/// The operations LU elimination needs, implemented by every element type the
/// crate's determinant routines touch. `mag` drives partial pivoting.
pub trait Scalar: Clone {
    fn s_zero(like: &Self) -> Self;
    fn s_one(like: &Self) -> Self;
    fn s_add(&self, other: &Self) -> Self;
    fn s_sub(&self, other: &Self) -> Self;
    fn s_mul(&self, other: &Self) -> Self;
    fn s_div(&self, other: &Self) -> Self;
    fn s_neg(&self) -> Self;
    fn mag(&self) -> f64;
    fn s_is_zero(&self) -> bool;
}

impl Scalar for f64 {
    fn s_zero(_like: &Self) -> Self {
        0.0
    }
    fn s_one(_like: &Self) -> Self {
        1.0
    }
    fn s_add(&self, other: &Self) -> Self {
        self + other
    }
    fn s_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn s_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn s_div(&self, other: &Self) -> Self {
        self / other
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn mag(&self) -> f64 {
        self.abs()
    }
    fn s_is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for Complex64 {
    fn s_zero(_like: &Self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn s_one(_like: &Self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn s_add(&self, other: &Self) -> Self {
        self + other
    }
    fn s_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn s_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn s_div(&self, other: &Self) -> Self {
        self / other
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn mag(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
    fn s_is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Scalar for BigFloat {
    fn s_zero(like: &Self) -> Self {
        BigFloat::zero(like.prec())
    }
    fn s_one(like: &Self) -> Self {
        BigFloat::from_u64(1, like.prec())
    }
    fn s_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn s_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn s_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn s_div(&self, other: &Self) -> Self {
        self.div(other)
    }
    fn s_neg(&self) -> Self {
        self.neg()
    }
    fn mag(&self) -> f64 {
        // Magnitude order suffices for pivot choice; avoid to_f64 overflow by
        // comparing exponents through a clamped scale.
        if self.is_zero() {
            0.0
        } else {
            let m = self.mag2().clamp(-1000, 1000) as f64;
            m.exp2()
        }
    }
    fn s_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Determinant by LU with partial pivoting; consumes a square row-major
/// matrix. Returns zero when a pivot column vanishes entirely.
pub fn det_lu<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        panic!("det_lu of empty matrix");
    }
    for row in &a {
        assert_eq!(row.len(), n, "det_lu needs a square matrix");
    }
    let mut det = T::s_one(&a[0][0]);
    for k in 0..n {
        let mut piv = k;
        let mut best = a[k][k].mag();
        for (i, row) in a.iter().enumerate().skip(k + 1) {
            let m = row[k].mag();
            if m > best {
                best = m;
                piv = i;
            }
        }
        if a[piv][k].s_is_zero() {
            return T::s_zero(&det);
        }
        if piv != k {
            a.swap(piv, k);
            det = det.s_neg();
        }
        det = det.s_mul(&a[k][k]);
        for i in k + 1..n {
            let f = a[i][k].s_div(&a[k][k]);
            for j in k + 1..n {
                let t = f.s_mul(&a[k][j]);
                a[i][j] = a[i][j].s_sub(&t);
            }
            a[i][k] = T::s_zero(&f);
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_det_f64() {
        let m = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        assert!((det_lu(m) - 5.0).abs() < 1e-14);
        let m3 = vec![
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 10.0],
        ];
        assert!((det_lu(m3) - -3.0).abs() < 1e-12);
    }

    #[test]
    fn unit_det_singular() {
        let m = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(det_lu(m).abs() < 1e-14);
    }

    #[test]
    fn unit_det_complex() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        // det [[1, i], [i, 1]] = 1 - i^2 = 2
        let m = vec![vec![one, i], vec![i, one]];
        let d = det_lu(m);
        assert!((d - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn unit_det_bigfloat_hilbert() {
        // Hilbert 6x6 determinant = 1/186313420339200000, brutal for f64 but
        // easy at 192 bits.
        let n = 6;
        let prec = 192;
        let m: Vec<Vec<BigFloat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        BigFloat::from_u64(1, prec)
                            .div(&BigFloat::from_u64((i + j + 1) as u64, prec))
                    })
                    .collect()
            })
            .collect();
        let d = det_lu(m);
        let want = 1.0 / 1.863134203392e17;
        let got = d.to_f64();
        assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
    }
}
