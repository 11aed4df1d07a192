//! Exact and asymptotic distributions of longest-increasing-subsequence
//! observables in the Hammersley/PNG process family.
//!
//! The crate connects four layers of the same circle of ideas, each
//! verifiable against the next:
//!
//! * [`combinat`] — permutations, tableaux, RSK, Schur polynomials, and
//!   brute-force enumeration of symmetrized longest-path distributions.
//! * [`groupavg`] — exact finite-size distributions written as averages over
//!   the classical compact groups U(l), O(l), Sp(l), evaluated by Toeplitz
//!   determinants (Heine) and by direct Weyl-measure quadrature.
//! * [`opuc`] / [`painleve2`] — orthogonal polynomials on the unit circle for
//!   the weight `exp(2t cos θ)`, the discrete Painlevé II recursion for their
//!   reflection coefficients, and the Hastings–McLeod Painlevé II transcendent
//!   with the Tracy–Widom distributions built from it.
//! * [`kpz_scaling`] / [`montecarlo`] — the Baik–Rains stationary limit
//!   distributions and direct simulation of every model in the family
//!   (Hammersley squares, symmetrized squares, boundary sources, PNG droplet,
//!   Johansson last passage percolation).
//!
//! Each runnable example under `examples/` demonstrates one capability:
//!
//! ```text
//! cargo run --release --example lis_and_layers      # patience sorting, RSK, Greene invariants
//! cargo run --release --example exact_distributions # exact CDFs vs enumeration
//! cargo run --release --example symmetry_classes    # the four symmetrized models
//! cargo run --release --example vicious_walkers     # walker counts vs group integrals
//! cargo run --release --example discrete_painleve   # reflection coefficients, dual routes
//! cargo run --release --example boundary_sources    # boundary rates, bordered determinants
//! cargo run --release --example tracy_widom         # F_GUE/F_GOE/F_GSE tables
//! cargo run --release --example stationary_kpz      # Baik–Rains family
//! cargo run --release --example growth_simulation   # PNG droplet vs LIS identity
//! cargo run --release --example johansson_model     # geometric last passage percolation
//! cargo run --release --example verify_all          # the full named-invariant suite
//! ```
//!
//! The `kpzlab` binary exposes the same functionality as subcommands
//! (`exact`, `sim`, `tw`, `kpz`, `verify`); see `kpzlab --help`.

pub mod combinat;
pub mod error;
pub mod groupavg;
pub mod kpz_scaling;
pub mod montecarlo;
pub mod opuc;
pub mod painleve2;
pub mod specfun;

pub use error::{Error, Result};
