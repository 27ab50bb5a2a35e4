//! Coefficient recovery by sampling `W` on the unit circle.
//!
//! The enumerator has degree `ds`, so its values at `L >= ds + 1` equally
//! spaced roots of unity determine the coefficients exactly; an inverse
//! transform of the samples returns them. Sampling uses the `O(N s d)`
//! point evaluator, which makes this engine attractive when `d * s` is
//! large but the coefficient vector itself is still wanted.
//!
//! `L` is rounded up to a power of two for the radix-2 transform. The bins
//! between `ds + 1` and `L - 1` correspond to coefficients the polynomial
//! does not have, so everything the transform deposits there is pure
//! sampling error — they are measured and folded into the residual rather
//! than thrown away.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::engines::charsum::evaluate_at_many;
use crate::engines::float::FloatEnumerator;
use crate::rule::{BoxRadius, LatticeRule};

/// In-place radix-2 decimation-in-time transform with kernel
/// `e^{sign * 2πi jk / L}`; `sign = -1.0` is the forward direction used for
/// coefficient recovery. The length must be a power of two.
pub(crate) fn fft_in_place(buf: &mut [Complex64], sign: f64) {
    let l = buf.len();
    debug_assert!(l.is_power_of_two());
    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..l {
        let mut bit = l >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    // Butterflies, doubling the block length each pass.
    let mut len = 2;
    while len <= l {
        let angle = sign * TAU / len as f64;
        let w_len = Complex64::new(angle.cos(), angle.sin());
        for start in (0..l).step_by(len) {
            let mut w = Complex64::new(1.0, 0.0);
            for k in start..start + len / 2 {
                let u = buf[k];
                let v = buf[k + len / 2] * w;
                buf[k] = u + v;
                buf[k + len / 2] = u - v;
                w *= w_len;
            }
        }
        len <<= 1;
    }
}

/// Recovered coefficients plus the error that the recovery exposes: the
/// largest scaled magnitude left in the padding bins above index `ds` and
/// the largest imaginary part anywhere. Both must be noise-sized for the
/// run to be trustworthy, and both are folded into the enumerator's
/// residual so rounding cannot miss them.
#[derive(Debug, Clone, PartialEq)]
pub struct FftRecovery {
    pub enumerator: FloatEnumerator,
    pub padding_max: f64,
    pub imag_max: f64,
}

/// Samples `W` at `L` roots of unity and inverts the transform.
pub fn fft_recover(rule: &LatticeRule, d: BoxRadius) -> FftRecovery {
    let ds = d.get() as usize * rule.dimension();
    let l = (ds + 1).next_power_of_two();

    // W has real coefficients, so W(conj z) = conj W(z): sampling the upper
    // half circle is enough and the rest is conjugate-mirrored.
    let points: Vec<Complex64> = (0..=l / 2)
        .map(|m| Complex64::from_polar(1.0, TAU * m as f64 / l as f64))
        .collect();
    let values = evaluate_at_many(rule, d, &points);
    let mut samples = vec![Complex64::new(0.0, 0.0); l];
    samples[..=l / 2].copy_from_slice(&values);
    for m in l / 2 + 1..l {
        samples[m] = samples[l - m].conj();
    }

    fft_in_place(&mut samples, -1.0);
    let scale = 1.0 / l as f64;

    let coefficients: Vec<f64> = samples[..=ds].iter().map(|c| c.re * scale).collect();
    let imag_max = samples
        .iter()
        .map(|c| (c.im * scale).abs())
        .fold(0.0, f64::max);
    let padding_max = samples[ds + 1..]
        .iter()
        .map(|c| (c.re * scale).abs())
        .fold(0.0, f64::max);

    let enumerator = FloatEnumerator::with_extra_residual(
        rule.clone(),
        d,
        coefficients,
        imag_max.max(padding_max),
    );
    FftRecovery {
        enumerator,
        padding_max,
        imag_max,
    }
}

/// The FFT engine's enumerator, diagnostics folded in but not reported.
pub fn fft_enumerator(rule: &LatticeRule, d: BoxRadius) -> FloatEnumerator {
    fft_recover(rule, d).enumerator
}
