//! Float-valued enumerators produced by the analytic engines, and the
//! rounding step that turns them back into exact counts.

use crate::enumerator::{WeightEnumerator, COUNT_LIMIT};
use crate::error::{Error, Result};
use crate::rule::{BoxRadius, LatticeRule};

/// Coefficients as computed in floating point, before rounding.
///
/// `max_residual` is the largest distance of any coefficient from its
/// nearest integer, folded together with whatever leftover error the engine
/// itself measured (FFT padding bins, imaginary parts). Rounding compares
/// this single number against the tolerance, so error cannot hide in parts
/// of the computation the coefficient vector no longer shows.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatEnumerator {
    rule: LatticeRule,
    d: BoxRadius,
    coefficients: Vec<f64>,
    max_residual: f64,
}

impl FloatEnumerator {
    pub(crate) fn new(rule: LatticeRule, d: BoxRadius, coefficients: Vec<f64>) -> Self {
        Self::with_extra_residual(rule, d, coefficients, 0.0)
    }

    pub(crate) fn with_extra_residual(
        rule: LatticeRule,
        d: BoxRadius,
        coefficients: Vec<f64>,
        extra: f64,
    ) -> Self {
        let mut max_residual = extra;
        for &c in &coefficients {
            let dist = (c - c.round()).abs();
            // A NaN coefficient poisons the residual for good; a plain
            // `max` would silently drop it.
            if dist.is_nan() {
                max_residual = f64::NAN;
                break;
            }
            if dist > max_residual {
                max_residual = dist;
            }
        }
        FloatEnumerator {
            rule,
            d,
            coefficients,
            max_residual,
        }
    }

    pub fn rule(&self) -> &LatticeRule {
        &self.rule
    }

    pub fn box_radius(&self) -> BoxRadius {
        self.d
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }
}

/// A successfully rounded enumerator plus the residual it was rounded at.
#[derive(Debug, Clone, PartialEq)]
pub struct Rounded {
    pub enumerator: WeightEnumerator,
    pub residual: f64,
}

/// Rounds every coefficient to the nearest integer.
///
/// Fails with `ResidualTooLarge` when the recorded residual exceeds `tol` —
/// that is a precision problem, rerun with a looser tolerance or a smaller
/// instance. Fails with `InvariantViolation` when the rounded integers are
/// not a plausible enumerator (negative, odd positive-norm count, wrong
/// constant term): residuals were small, so the engine computed the wrong
/// polynomial outright, which is a bug and not noise.
pub fn round_coeffs(float: &FloatEnumerator, tol: f64) -> Result<Rounded> {
    debug_assert!(tol > 0.0, "tolerance must be positive");
    let residual = float.max_residual();
    // Negated on purpose: a NaN residual compares false either way around,
    // and NaN must land in the error branch.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(residual <= tol) {
        return Err(Error::ResidualTooLarge { residual, tol });
    }
    let mut counts = Vec::with_capacity(float.coefficients().len());
    for (a, &c) in float.coefficients().iter().enumerate() {
        let r = c.round();
        if r < 0.0 {
            return Err(Error::InvariantViolation {
                detail: format!("coefficient {a} rounds to the negative value {r}"),
            });
        }
        if r > COUNT_LIMIT as f64 {
            return Err(Error::InvariantViolation {
                detail: format!("coefficient {a} rounds to {r}, beyond the count limit"),
            });
        }
        counts.push(r as u64);
    }
    let enumerator = WeightEnumerator::new(float.rule().clone(), float.box_radius(), counts)?;
    Ok(Rounded {
        enumerator,
        residual,
    })
}

/// Default rounding tolerance: `1e-6` scaled up when the box holds many
/// points per residue class, because the float engines sum that many terms
/// per coefficient and their cancellation error grows with the sum.
pub fn default_tolerance(rule: &LatticeRule, d: BoxRadius) -> f64 {
    let box_points = (d.side() as f64).powi(rule.dimension() as i32);
    1e-6 * (box_points / rule.modulus() as f64).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn float(coeffs: &[f64]) -> FloatEnumerator {
        let rule = LatticeRule::new(3, &[1, 2]).unwrap();
        FloatEnumerator::new(rule, BoxRadius::new(1).unwrap(), coeffs.to_vec())
    }

    #[test]
    fn records_the_largest_distance_to_an_integer() {
        let f = float(&[1.0 + 1e-9, -2e-12, 2.0 - 3e-9]);
        assert!((f.max_residual() - 3e-9).abs() < 1e-15);
    }

    #[test]
    fn extra_residual_is_folded_in() {
        let rule = LatticeRule::new(3, &[1, 2]).unwrap();
        let f = FloatEnumerator::with_extra_residual(
            rule,
            BoxRadius::new(1).unwrap(),
            vec![1.0, 0.0, 2.0],
            1e-3,
        );
        assert_eq!(f.max_residual(), 1e-3);
    }

    #[test]
    fn rounds_clean_coefficients() {
        let rounded = round_coeffs(&float(&[1.0 + 1e-9, 1e-10, 2.0 - 1e-9]), 1e-6).unwrap();
        assert_eq!(rounded.enumerator.coefficients(), &[1, 0, 2]);
        assert!(rounded.residual > 0.0 && rounded.residual <= 1e-6);
    }

    #[test]
    fn rejects_residual_over_tolerance() {
        let err = round_coeffs(&float(&[1.0, 0.3, 2.0]), 1e-6).unwrap_err();
        assert_eq!(
            err,
            Error::ResidualTooLarge {
                residual: 0.3,
                tol: 1e-6
            }
        );
    }

    #[test]
    fn nan_coefficients_cannot_pass() {
        let err = round_coeffs(&float(&[1.0, f64::NAN, 2.0]), 1e-6).unwrap_err();
        assert!(matches!(err, Error::ResidualTooLarge { .. }));
    }

    #[test]
    fn structurally_impossible_counts_are_flagged_as_bugs() {
        // Odd positive-norm count.
        let err = round_coeffs(&float(&[1.0, 3.0, 2.0]), 1e-6).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { .. }));
        // Negative count.
        let err = round_coeffs(&float(&[1.0, 0.0, -2.0]), 1e-6).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { .. }));
        // Constant term must be 1.
        let err = round_coeffs(&float(&[2.0, 0.0, 2.0]), 1e-6).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { .. }));
    }

    #[test]
    fn default_tolerance_scales_with_box_density() {
        let rule = LatticeRule::new(5, &[1, 2]).unwrap();
        let tol = default_tolerance(&rule, BoxRadius::new(2).unwrap());
        assert!((tol - 5e-6).abs() < 1e-18); // 25 points / 5 classes
        let rule = LatticeRule::new(100, &[1]).unwrap();
        let tol = default_tolerance(&rule, BoxRadius::new(1).unwrap());
        assert_eq!(tol, 1e-6); // sparse box: floor at 1e-6
    }
}
