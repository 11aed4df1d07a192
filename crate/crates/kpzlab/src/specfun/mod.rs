//! Numerical foundation: extended-precision floats, Bessel I and Airy
//! functions, quadrature rules, an adaptive Runge-Kutta integrator, cubic
//! splines, and a generic LU determinant.

pub mod airy;
pub mod bessel;
pub mod bigfloat;
pub mod linalg;
pub mod ode;
pub mod quadrature;
pub mod spline;

pub use airy::airy_ai;
pub use bessel::{bessel_i, bessel_i_f64};
pub use bigfloat::{BigFloat, PrecisionContext};
pub use linalg::{det_lu, Scalar};
pub use ode::{integrate_ode, OdeSolution};
pub use quadrature::{gauss_legendre, gl_integrate, periodic_quadrature};
pub use spline::CubicSpline;
