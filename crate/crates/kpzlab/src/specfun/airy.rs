//! Airy function Ai and its derivative on the real line.
//!
//! For |x| <= 8 the Maclaurin series is summed in extended precision: the
//! series loses about 2*zeta/ln2 bits to cancellation (zeta = (2/3)|x|^(3/2)),
//! so the working precision grows with |x| to keep ~64 clean bits. Beyond 8
//! the standard asymptotic expansions apply, truncated at the smallest term;
//! their superasymptotic floor exp(-2*zeta) is below 5e-14 relative at the
//! crossover and falls rapidly further out.

use super::bigfloat::BigFloat;

// Ai(0) and Ai'(0) split into three doubles summing to ~150 correct bits.
const AI0: [f64; 3] = [0.3550280538878172, 2.05233632436212e-17, -1.1009245373379416e-34];
const AIP0: [f64; 3] = [-0.2588194037928068, 2.522243111610832e-17, 1.1690102804178028e-33];

const SQRT_PI: f64 = 1.7724538509055160273;

/// (Ai(x), Ai'(x)).
pub fn airy_ai(x: f64) -> (f64, f64) {
    assert!(x.is_finite(), "airy_ai needs a finite argument");
    if x.abs() <= 8.0 {
        series(x)
    } else if x > 0.0 {
        asymptotic_pos(x)
    } else {
        asymptotic_neg(-x)
    }
}

fn split3(parts: [f64; 3], prec: u32) -> BigFloat {
    let mut s = BigFloat::zero(prec);
    for p in parts {
        s = s.add(&BigFloat::from_f64(p, prec));
    }
    s
}

fn series(x: f64) -> (f64, f64) {
    let ax = x.abs();
    let zeta = 2.0 / 3.0 * ax.powf(1.5);
    let work = 64 + (1.93 * ax.powf(1.5)).ceil() as u32 + 10;
    let stop_mag = if x > 0.0 {
        -((1.4427 * zeta).ceil() as i64) - 90
    } else {
        -90
    };
    let xb = BigFloat::from_f64(x, work);
    let x3 = xb.mul(&xb).mul(&xb);
    let nf = |v: u64| BigFloat::from_u64(v, work);

    // f  = 1 + x^3/6 + ...            a_{k+1} = a_k x^3/((3k+2)(3k+3))
    // g  = x + x^4/12 + ...           b_{k+1} = b_k x^3/((3k+3)(3k+4))
    // f' = x^2/2 + x^5/30 + ...       c_{k+1} = c_k x^3/((3k)(3k+2)), k>=1
    // g' = 1 + x^3/3 + ...            d_{k+1} = d_k x^3/((3k+1)(3k+3))
    let mut a = nf(1);
    let mut b = xb.clone();
    let mut c = xb.mul(&xb).mul_pow2(-1);
    let mut d = nf(1);
    let mut sf = a.clone();
    let mut sg = b.clone();
    let mut sfp = c.clone();
    let mut sgp = d.clone();
    let mut k = 0u64;
    loop {
        a = a.mul(&x3).div(&nf((3 * k + 2) * (3 * k + 3)));
        b = b.mul(&x3).div(&nf((3 * k + 3) * (3 * k + 4)));
        if k >= 1 {
            c = c.mul(&x3).div(&nf(3 * k * (3 * k + 2)));
        }
        d = d.mul(&x3).div(&nf((3 * k + 1) * (3 * k + 3)));
        sf = sf.add(&a);
        sg = sg.add(&b);
        if k >= 1 {
            sfp = sfp.add(&c);
        }
        sgp = sgp.add(&d);
        k += 1;
        let biggest = [&a, &b, &c, &d]
            .iter()
            .map(|t| if t.is_zero() { i64::MIN } else { t.mag2() })
            .max()
            .unwrap();
        if biggest < stop_mag {
            break;
        }
    }
    let c1 = split3(AI0, work);
    let c2 = split3(AIP0, work).neg();
    let ai = c1.mul(&sf).sub(&c2.mul(&sg));
    let aip = c1.mul(&sfp).sub(&c2.mul(&sgp));
    (ai.to_f64(), aip.to_f64())
}

/// Coefficients u_k, v_k of the asymptotic expansions, generated on the fly.
fn uv_coeffs(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0f64];
    let mut v = vec![1.0f64];
    for k in 0..n {
        let kf = k as f64;
        let next = u[k] * (6.0 * kf + 1.0) * (6.0 * kf + 3.0) * (6.0 * kf + 5.0)
            / (216.0 * (kf + 1.0) * (2.0 * kf + 1.0));
        u.push(next);
        v.push(-next * (6.0 * kf + 7.0) / (6.0 * kf + 5.0));
    }
    (u, v)
}

fn asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = uv_coeffs(40);
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut pw = 1.0; // (-1)^k zeta^{-k}
    let mut last = f64::INFINITY;
    for k in 0..u.len() {
        let tu = u[k] * pw;
        if tu.abs() >= last {
            break;
        }
        su += tu;
        sv += v[k] * pw;
        last = tu.abs();
        pw /= -zeta;
    }
    let x4 = x.powf(0.25);
    let e = (-zeta).exp();
    let ai = e / (2.0 * SQRT_PI * x4) * su;
    let aip = -(x4 * e / (2.0 * SQRT_PI)) * sv;
    (ai, aip)
}

fn asymptotic_neg(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (u, v) = uv_coeffs(40);
    // Alternating even/odd splits: sums over u_{2k}, u_{2k+1} etc.
    let mut ue = 0.0;
    let mut uo = 0.0;
    let mut ve = 0.0;
    let mut vo = 0.0;
    let mut pw = 1.0; // (-1)^k zeta^{-2k}
    let mut last = f64::INFINITY;
    let mut k = 0;
    while 2 * k + 1 < u.len() {
        let t = u[2 * k] * pw;
        if t.abs() >= last {
            break;
        }
        ue += t;
        uo += u[2 * k + 1] * pw / zeta;
        ve += v[2 * k] * pw;
        vo += v[2 * k + 1] * pw / zeta;
        last = t.abs();
        pw /= -zeta * zeta;
        k += 1;
    }
    let (s, c) = (zeta - std::f64::consts::FRAC_PI_4).sin_cos();
    let z4 = z.powf(0.25);
    let ai = (c * ue + s * uo) / (SQRT_PI * z4);
    let aip = (s * ve - c * vo) * z4 / SQRT_PI;
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    // (x, Ai(x), Ai'(x)) computed with mpmath at 50 digits.
    const REFS: &[(f64, f64, f64)] = &[
        (-15.0, 0.27821749087082893, 0.27237420430864202),
        (-12.3, -0.28747208025644158, 0.31007878814201414),
        (-8.1, -0.14290814709358112, 0.85621858632862497),
        (-7.9, 0.041701883617386709, 0.94004299802628024),
        (-6.0, -0.32914517362982311, 0.34593548728134289),
        (-4.7, 0.36736748287733137, -0.21499018008957212),
        (-2.0, 0.22740742820168558, 0.61825902074169104),
        (-0.5, 0.47572809161053959, -0.20408167033954739),
        (0.5, 0.23169360648083349, -0.22491053266468389),
        (2.0, 0.034924130423274379, -0.053090384433653632),
        (4.5, 0.00033025032351430898, -0.00071786656755750889),
        (6.2, 6.0224607196881955e-6, -1.522965169694156e-5),
        (7.9, 6.2396400972839342e-8, -1.7729958329430335e-7),
        (8.1, 3.5224356235735715e-8, -1.0130972032660844e-7),
        (12.0, 1.3931846888753608e-13, -4.8547365549853085e-13),
        (16.0, 4.1568888289170244e-20, -1.669188676838181e-19),
        (20.0, 1.6916728686705403e-27, -7.586391625748355e-27),
    ];

    #[test]
    fn unit_airy_reference_table() {
        for &(x, ai_ref, aip_ref) in REFS {
            let (ai, aip) = airy_ai(x);
            let tol = if x.abs() <= 8.0 { 1e-14 } else { 1e-12 };
            let re_a = (ai - ai_ref).abs() / ai_ref.abs().max(1e-300);
            let re_p = (aip - aip_ref).abs() / aip_ref.abs().max(1e-300);
            assert!(re_a <= tol, "Ai({x}) rel err {re_a:.2e}");
            assert!(re_p <= tol, "Ai'({x}) rel err {re_p:.2e}");
        }
    }

    #[test]
    fn unit_airy_origin() {
        let (ai, aip) = airy_ai(0.0);
        assert!((ai - 0.35502805388781723926).abs() < 1e-16);
        assert!((aip - -0.25881940379280679840).abs() < 1e-16);
    }

    #[test]
    fn unit_airy_branch_agreement() {
        // Both evaluation methods must agree where their domains overlap, so
        // nothing jumps at the crossover.
        for &x in &[8.0, 8.5, 9.0] {
            let (s_ai, s_aip) = series(x);
            let (a_ai, a_aip) = asymptotic_pos(x);
            assert!((s_ai - a_ai).abs() <= 5e-13 * s_ai.abs(), "Ai mismatch at {x}");
            assert!((s_aip - a_aip).abs() <= 5e-13 * s_aip.abs(), "Ai' mismatch at {x}");
        }
        for &x in &[-8.0, -8.5, -9.0] {
            let (s_ai, s_aip) = series(x);
            let (a_ai, a_aip) = asymptotic_neg(-x);
            assert!((s_ai - a_ai).abs() <= 1e-13, "Ai mismatch at {x}");
            assert!((s_aip - a_aip).abs() <= 1e-12, "Ai' mismatch at {x}");
        }
    }

    #[test]
    fn unit_airy_wronskian_near_crossover() {
        // Ai satisfies y'' = x y; check with a central second difference.
        for &x in &[-7.0, -3.0, 1.0, 5.0, 7.5] {
            let h = 1e-4;
            let (am, _) = airy_ai(x - h);
            let (a0, _) = airy_ai(x);
            let (ap, _) = airy_ai(x + h);
            let second = (am - 2.0 * a0 + ap) / (h * h);
            assert!(
                (second - x * a0).abs() < 1e-6 * (1.0 + a0.abs()),
                "ODE residual at {x}: {}",
                second - x * a0
            );
        }
    }
}
