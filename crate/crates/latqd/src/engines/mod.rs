//! The four coefficient engines and their shared numeric plumbing.
//!
//! [`brute_force`] is the oracle: it walks the whole index box. The
//! [`residue_dp`] transfer-matrix count produces the same exact integers at
//! polynomial cost. [`charsum`] and [`fft_enumerator`] work in floating
//! point — their results carry a residual and go through [`round_coeffs`]
//! before anyone may treat them as counts.

pub mod brute;
pub mod charsum;
pub mod fft;
pub mod float;
pub mod reduce;
pub mod residue;

pub use brute::{brute_force, BRUTE_FORCE_BOX_BUDGET};
pub use charsum::{charsum, evaluate_at, PerNodeFactor};
pub use fft::{fft_enumerator, fft_recover, FftRecovery};
pub use float::{default_tolerance, round_coeffs, FloatEnumerator, Rounded};
pub use reduce::tree_reduce;
pub use residue::{residue_dp, RESIDUE_DP_OP_BUDGET};
