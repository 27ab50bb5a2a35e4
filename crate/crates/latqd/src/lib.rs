//! Weight enumerators and trigonometric degree of rank-1 lattice rules.
//!
//! A rank-1 lattice rule averages a function over the points
//! `{ frac(n·g/N) : n = 0, …, N-1 }`. The rule integrates the exponential
//! `e^{2πi k·x}` exactly precisely when `k` is *dual* — `k·g ≡ 0 (mod N)` —
//! or zero, so its quality for trigonometric polynomials is governed by how
//! far from the origin the nonzero dual vectors start. This crate computes:
//!
//! * the **weight enumerator** `W(z) = Σ_a M(a) z^a`, where `M(a)` counts
//!   dual vectors of ℓ1 norm `a` inside the box `{-d, …, d}^s`, via four
//!   engines of very different cost profiles ([`engines`]);
//! * the **trigonometric degree** `rho` — the largest `t` such that every
//!   trigonometric polynomial of degree `t` is integrated exactly — which
//!   equals the minimal nonzero dual norm minus one ([`degree`]);
//! * good generating vectors by exhaustive, Korobov, or random
//!   [`search`].
//!
//! ```
//! use latqd::{BoxRadius, LatticeRule};
//!
//! let rule = LatticeRule::new(5, &[1, 2])?;
//! let w = latqd::engines::brute_force(&rule, BoxRadius::new(2)?)?;
//! assert_eq!(w.coefficients(), &[1, 0, 0, 4, 0]);
//!
//! let degree = latqd::degree::trig_degree(&rule)?;
//! assert_eq!(degree.rho, 2);
//! # Ok::<(), latqd::Error>(())
//! ```

pub mod degree;
pub mod engines;
pub mod enumerator;
pub mod error;
pub mod rule;
pub mod search;

pub use enumerator::{box_point_count, DualVector, TrigDegree, WeightEnumerator};
pub use error::{Error, Result};
pub use rule::{BoxRadius, LatticeRule};

/// Re-exported so downstream code can evaluate enumerators without naming
/// the `num-complex` version this crate was built against.
pub use num_complex::Complex64;
