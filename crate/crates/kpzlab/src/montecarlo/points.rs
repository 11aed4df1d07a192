//! Samplers for Poisson point configurations in the unit square, plain or
//! constrained by a reflection symmetry, together with the longest
//! strictly-increasing chain observable.
//!
//! Each symmetry class draws free generators in a fundamental domain and
//! closes the configuration under the symmetry, with extra Poisson streams
//! of fixed points on the symmetry axes:
//!
//! * `Plain(lambda)`: Poisson(lambda^2) points, no constraint.
//! * `Diag(z, alpha)`: Poisson(z^2/2) generator points below the diagonal,
//!   each paired with its transpose, plus Poisson(alpha z) points on the
//!   diagonal itself.
//! * `AntiDiag(z, beta)`: the same construction for the anti-diagonal
//!   x + y = 1, with Poisson(beta z) points on that axis.
//! * `BothDiags(z, alpha, beta)`: Poisson(z^2) generators in the quarter
//!   domain below both axes, closed to orbits of four, plus axis points in
//!   symmetric pairs: Poisson(alpha z) diagonal pairs and Poisson(beta z)
//!   anti-diagonal pairs.
//! * `Central(z)`: Poisson(2 z^2) generators in the lower half square, each
//!   paired with its image under inversion through the centre.
//!
//! Reflections use 1 - x, which is exact in binary arithmetic for the
//! 53-bit uniforms drawn here, so closure holds to the last bit.

use super::{check_rate, poisson, trial_rng, unit};
use crate::combinat::{lis, Permutation, SymmetryClass};
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// A sampled point configuration with its symmetry annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    class: SymmetryClass,
    points: Vec<(f64, f64)>,
    diagonal_count: usize,
    anti_diagonal_count: usize,
}

impl PointConfig {
    pub(crate) fn from_parts(
        class: SymmetryClass,
        points: Vec<(f64, f64)>,
        diagonal_count: usize,
        anti_diagonal_count: usize,
    ) -> PointConfig {
        PointConfig {
            class,
            points,
            diagonal_count,
            anti_diagonal_count,
        }
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Number of points lying exactly on the diagonal y = x.
    pub fn diagonal_count(&self) -> usize {
        self.diagonal_count
    }

    /// Number of points lying exactly on the anti-diagonal x + y = 1.
    pub fn anti_diagonal_count(&self) -> usize {
        self.anti_diagonal_count
    }
}

pub(crate) fn validate_class_rates(
    param: f64,
    class: SymmetryClass,
    alpha: f64,
    beta: f64,
) -> Result<()> {
    check_rate("intensity parameter", param)?;
    check_rate("alpha", alpha)?;
    check_rate("beta", beta)?;
    let (use_alpha, use_beta) = match class {
        SymmetryClass::Plain | SymmetryClass::Central => (false, false),
        SymmetryClass::Diag => (true, false),
        SymmetryClass::AntiDiag => (false, true),
        SymmetryClass::BothDiags => (true, true),
    };
    if !use_alpha && alpha != 0.0 {
        return Err(Error::Domain(format!(
            "class {class:?} has no diagonal source; alpha must be 0, got {alpha}"
        )));
    }
    if !use_beta && beta != 0.0 {
        return Err(Error::Domain(format!(
            "class {class:?} has no anti-diagonal source; beta must be 0, got {beta}"
        )));
    }
    Ok(())
}

/// Draws one configuration of the given class.  Single-shot convenience
/// around the batch machinery; uses stream 0 of the seed's reserved trial.
pub fn sample_points(
    param: f64,
    class: SymmetryClass,
    alpha: f64,
    beta: f64,
    seed: u64,
) -> Result<PointConfig> {
    validate_class_rates(param, class, alpha, beta)?;
    let mut rng = trial_rng(seed, 0);
    Ok(sample_points_with(&mut rng, param, class, alpha, beta))
}

pub(crate) fn sample_points_with(
    rng: &mut ChaCha8Rng,
    param: f64,
    class: SymmetryClass,
    alpha: f64,
    beta: f64,
) -> PointConfig {
    let mut points = Vec::new();
    let mut diagonal_count = 0;
    let mut anti_diagonal_count = 0;
    match class {
        SymmetryClass::Plain => {
            let n = poisson(rng, param * param);
            for _ in 0..n {
                let x = unit(rng);
                let y = unit(rng);
                points.push((x, y));
            }
        }
        SymmetryClass::Diag => {
            let m = poisson(rng, param * param / 2.0);
            for _ in 0..m {
                let (mut x, mut y) = (unit(rng), unit(rng));
                if y > x {
                    std::mem::swap(&mut x, &mut y);
                }
                points.push((x, y));
                points.push((y, x));
            }
            let d = poisson(rng, alpha * param);
            for _ in 0..d {
                let u = unit(rng);
                points.push((u, u));
            }
            diagonal_count = d;
        }
        SymmetryClass::AntiDiag => {
            let m = poisson(rng, param * param / 2.0);
            for _ in 0..m {
                let (mut x, mut y) = (unit(rng), unit(rng));
                if x + y > 1.0 {
                    let (rx, ry) = (1.0 - y, 1.0 - x);
                    x = rx;
                    y = ry;
                }
                points.push((x, y));
                points.push((1.0 - y, 1.0 - x));
            }
            let b = poisson(rng, beta * param);
            for _ in 0..b {
                let u = unit(rng);
                points.push((u, 1.0 - u));
            }
            anti_diagonal_count = b;
        }
        SymmetryClass::BothDiags => {
            let g = poisson(rng, param * param);
            for _ in 0..g {
                let (mut x, mut y) = (unit(rng), unit(rng));
                if y > x {
                    std::mem::swap(&mut x, &mut y);
                }
                if x + y > 1.0 {
                    let (rx, ry) = (1.0 - y, 1.0 - x);
                    x = rx;
                    y = ry;
                }
                points.push((x, y));
                points.push((y, x));
                points.push((1.0 - y, 1.0 - x));
                points.push((1.0 - x, 1.0 - y));
            }
            // Axis points are drawn through the upper-half coordinate, which
            // lands on the 53-bit grid, so both members of each mirror pair
            // reflect back onto each other exactly.
            let a = poisson(rng, alpha * param);
            for _ in 0..a {
                let v = 0.5 + unit(rng) / 2.0;
                let u = 1.0 - v;
                points.push((u, u));
                points.push((v, v));
            }
            diagonal_count = 2 * a;
            let b = poisson(rng, beta * param);
            for _ in 0..b {
                let v = 0.5 + unit(rng) / 2.0;
                points.push((v, 1.0 - v));
                points.push((1.0 - v, v));
            }
            anti_diagonal_count = 2 * b;
        }
        SymmetryClass::Central => {
            let g = poisson(rng, 2.0 * param * param);
            for _ in 0..g {
                let x = unit(rng);
                // Draw the mirror ordinate on the 53-bit grid so inversion
                // through the centre is an exact involution.
                let y = 1.0 - (0.5 + unit(rng) / 2.0);
                points.push((x, y));
                points.push((1.0 - x, 1.0 - y));
            }
        }
    }
    PointConfig {
        class,
        points,
        diagonal_count,
        anti_diagonal_count,
    }
}

/// Longest strictly-increasing chain through the configuration: the maximal
/// number of points that can be visited by a path moving up and to the
/// right.  Coordinates are reduced to ranks by stable lexicographic sort
/// (x first, then y), then patience sorting runs on the rank permutation.
pub fn lis_of_config(cfg: &PointConfig) -> usize {
    let pts = &cfg.points;
    if pts.is_empty() {
        return 0;
    }
    let n = pts.len();
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&i, &j| {
        pts[i]
            .partial_cmp(&pts[j])
            .expect("coordinates are finite")
    });
    let mut by_y: Vec<usize> = (0..n).collect();
    by_y.sort_by(|&i, &j| {
        (pts[i].1, pts[i].0)
            .partial_cmp(&(pts[j].1, pts[j].0))
            .expect("coordinates are finite")
    });
    let mut rank = vec![0usize; n];
    for (r, &i) in by_y.iter().enumerate() {
        rank[i] = r + 1;
    }
    let word: Vec<usize> = by_x.iter().map(|&i| rank[i]).collect();
    let perm = Permutation::new(word).expect("distinct ranks form a permutation");
    lis(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::longest_chain_dp;
    use crate::groupavg::symmetrized_cdf_exact;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn plain_count_is_poisson_with_unit_square_coordinates() {
        let trials = 100_000;
        let lambda = 1.3_f64;
        let mean = lambda * lambda;
        let mut counts = [0usize; 6];
        for i in 0..trials {
            let mut rng = trial_rng(41, i);
            let cfg = sample_points_with(&mut rng, lambda, SymmetryClass::Plain, 0.0, 0.0);
            for &(x, y) in cfg.points() {
                assert!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0);
            }
            if cfg.points().len() < counts.len() {
                counts[cfg.points().len()] += 1;
            }
        }
        for (k, &c) in counts.iter().enumerate() {
            let expect = (-mean).exp() * mean.powi(k as i32) / factorial(k);
            let sigma = (expect * (1.0 - expect) / trials as f64).sqrt();
            let diff = (c as f64 / trials as f64 - expect).abs();
            assert!(
                diff <= 3.0 * sigma + 1e-12,
                "Poisson mass at {k}: empirical off by {diff}, 3 sigma = {}",
                3.0 * sigma
            );
        }
    }

    #[test]
    fn diagonal_class_joint_law_matches_the_closed_form() {
        // Total points n and diagonal points d determine the generator count
        // (n - d) / 2; the joint law is the product of the two Poisson laws,
        // equivalently e^(-alpha z - z^2/2) z^n / n! alpha^d times the
        // number of matchings of n items into d singletons and pairs.
        let trials = 100_000;
        let (z, alpha) = (1.0_f64, 0.5_f64);
        let mut counts = std::collections::HashMap::new();
        for i in 0..trials {
            let mut rng = trial_rng(42, i);
            let cfg = sample_points_with(&mut rng, z, SymmetryClass::Diag, alpha, 0.0);
            let n = cfg.points().len();
            let d = cfg.diagonal_count();
            *counts.entry((n, d)).or_insert(0usize) += 1;
        }
        let mut checked = 0;
        for n in 0..=4usize {
            for d in (n % 2..=n).step_by(2) {
                let m = (n - d) / 2;
                let pairs = factorial(n) / (factorial(d) * 2f64.powi(m as i32) * factorial(m));
                let expect = (-alpha * z - z * z / 2.0).exp() * z.powi(n as i32) / factorial(n)
                    * alpha.powi(d as i32)
                    * pairs;
                let sigma = (expect * (1.0 - expect) / trials as f64).sqrt();
                let got = *counts.get(&(n, d)).unwrap_or(&0) as f64 / trials as f64;
                assert!(
                    (got - expect).abs() <= 3.0 * sigma + 1e-12,
                    "joint mass at n = {n}, d = {d}: {got} vs {expect}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 9, "covered the small-count cells");
    }

    #[test]
    fn configurations_close_under_their_symmetry() {
        let contains = |pts: &[(f64, f64)], p: (f64, f64)| pts.iter().any(|&q| q == p);
        for i in 0..50 {
            let mut rng = trial_rng(43, i);
            let cfg = sample_points_with(&mut rng, 1.2, SymmetryClass::Diag, 0.4, 0.0);
            for &(x, y) in cfg.points() {
                assert!(contains(cfg.points(), (y, x)), "transpose closure");
            }
            assert_eq!(
                cfg.points().iter().filter(|p| p.0 == p.1).count(),
                cfg.diagonal_count()
            );

            let mut rng = trial_rng(44, i);
            let cfg = sample_points_with(&mut rng, 1.2, SymmetryClass::AntiDiag, 0.0, 0.4);
            for &(x, y) in cfg.points() {
                assert!(
                    contains(cfg.points(), (1.0 - y, 1.0 - x)),
                    "anti-transpose closure"
                );
            }
            assert_eq!(
                cfg.points().iter().filter(|p| p.0 + p.1 == 1.0).count(),
                cfg.anti_diagonal_count()
            );

            let mut rng = trial_rng(45, i);
            let cfg = sample_points_with(&mut rng, 0.9, SymmetryClass::BothDiags, 0.3, 0.2);
            for &(x, y) in cfg.points() {
                assert!(contains(cfg.points(), (y, x)));
                assert!(contains(cfg.points(), (1.0 - y, 1.0 - x)));
                assert!(contains(cfg.points(), (1.0 - x, 1.0 - y)));
            }
            assert_eq!(cfg.diagonal_count() % 2, 0, "diagonal points come in pairs");
            assert_eq!(cfg.anti_diagonal_count() % 2, 0);

            let mut rng = trial_rng(46, i);
            let cfg = sample_points_with(&mut rng, 1.0, SymmetryClass::Central, 0.0, 0.0);
            for &(x, y) in cfg.points() {
                assert!(
                    contains(cfg.points(), (1.0 - x, 1.0 - y)),
                    "inversion closure"
                );
            }
            assert_eq!(cfg.points().len() % 2, 0);
        }
    }

    #[test]
    fn chain_length_matches_quadratic_oracle_and_symmetry() {
        let classes = [
            (SymmetryClass::Plain, 0.0, 0.0),
            (SymmetryClass::Diag, 0.5, 0.0),
            (SymmetryClass::AntiDiag, 0.0, 0.5),
            (SymmetryClass::BothDiags, 0.3, 0.3),
            (SymmetryClass::Central, 0.0, 0.0),
        ];
        for (ci, &(class, a, b)) in classes.iter().enumerate() {
            for i in 0..40 {
                let mut rng = trial_rng(47 + ci as u64, i);
                let cfg = sample_points_with(&mut rng, 1.5, class, a, b);
                assert_eq!(
                    lis_of_config(&cfg),
                    longest_chain_dp(cfg.points()),
                    "patience result differs from chain DP for {class:?}"
                );
                // Transposing the configuration preserves chain length.
                let flipped = PointConfig {
                    class,
                    points: cfg.points().iter().map(|&(x, y)| (y, x)).collect(),
                    diagonal_count: cfg.diagonal_count(),
                    anti_diagonal_count: cfg.anti_diagonal_count(),
                };
                assert_eq!(lis_of_config(&cfg), lis_of_config(&flipped));
            }
        }
        let empty = PointConfig {
            class: SymmetryClass::Plain,
            points: Vec::new(),
            diagonal_count: 0,
            anti_diagonal_count: 0,
        };
        assert_eq!(lis_of_config(&empty), 0);
    }

    #[test]
    fn symmetrized_classes_match_exact_distributions() {
        let cases = [
            (SymmetryClass::Diag, 0.4, 0.0),
            (SymmetryClass::AntiDiag, 0.0, 0.3),
            (SymmetryClass::BothDiags, 0.3, 0.2),
            (SymmetryClass::Central, 0.0, 0.0),
        ];
        let z = 0.8;
        for (ci, &(class, alpha, beta)) in cases.iter().enumerate() {
            let cdf = super::super::lis_batch(z, class, alpha, beta, 100_000, 60 + ci as u64)
                .unwrap()
                .empirical_cdf();
            for l in 0..=5u64 {
                let exact = symmetrized_cdf_exact(z, alpha, beta, l as usize, class).unwrap();
                let sigma = (exact * (1.0 - exact) / cdf.trials as f64).sqrt();
                let diff = (cdf.cdf_at(l) - exact).abs();
                assert!(
                    diff <= 3.0 * sigma + 1e-12,
                    "{class:?} l = {l}: empirical {} vs exact {exact}",
                    cdf.cdf_at(l)
                );
            }
        }
    }

    #[test]
    fn rates_outside_a_class_are_rejected() {
        assert!(matches!(
            sample_points(1.0, SymmetryClass::Plain, 0.1, 0.0, 1).unwrap_err(),
            Error::Domain(_)
        ));
        assert!(matches!(
            sample_points(1.0, SymmetryClass::Diag, 0.0, 0.1, 1).unwrap_err(),
            Error::Domain(_)
        ));
        assert!(matches!(
            sample_points(1.0, SymmetryClass::AntiDiag, 0.2, 0.3, 1).unwrap_err(),
            Error::Domain(_)
        ));
        assert!(matches!(
            sample_points(-1.0, SymmetryClass::Plain, 0.0, 0.0, 1).unwrap_err(),
            Error::Domain(_)
        ));
        assert!(matches!(
            sample_points(f64::NAN, SymmetryClass::Plain, 0.0, 0.0, 1).unwrap_err(),
            Error::Domain(_)
        ));
    }
}
