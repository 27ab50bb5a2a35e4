//! Weight enumerators, dual vectors, and the trigonometric degree record.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rule::{BoxRadius, LatticeRule};

/// Counts must stay representable as exact integers in the places they end
/// up (signed 64-bit columns, JSON integers), so every engine rejects boxes
/// whose point total needs more than 63 bits.
pub const COUNT_LIMIT: u128 = i64::MAX as u128;

/// Number of points in the symmetric box `{-d, …, d}^s`, i.e. `(2d+1)^s`.
pub fn box_point_count(d: BoxRadius, dimension: usize) -> Result<u128> {
    let side = d.side() as u128;
    let mut total: u128 = 1;
    for _ in 0..dimension {
        total = total
            .checked_mul(side)
            .filter(|&t| t <= COUNT_LIMIT)
            .ok_or(Error::BudgetExceeded {
                required: u128::MAX,
                budget: COUNT_LIMIT,
            })?;
    }
    Ok(total)
}

/// The weight enumerator of a rule restricted to the box `{-d, …, d}^s`.
///
/// Coefficient `a` counts the dual vectors of ℓ1-norm exactly `a` inside the
/// box, so the vector always has length `d*s + 1`. Two facts hold for every
/// rule: the zero vector is the unique norm-0 dual (`M_0 = 1`), and duals of
/// positive norm pair up under negation (`M_a` even for `a >= 1`). The
/// constructor enforces both, which is what lets float engines detect their
/// own bugs after rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    rule: LatticeRule,
    d: BoxRadius,
    coefficients: Vec<u64>,
}

impl WeightEnumerator {
    pub fn new(rule: LatticeRule, d: BoxRadius, coefficients: Vec<u64>) -> Result<Self> {
        let expected = d.get() as usize * rule.dimension() + 1;
        if coefficients.len() != expected {
            return Err(Error::InvariantViolation {
                detail: format!(
                    "expected {expected} coefficients for d={} s={}, got {}",
                    d.get(),
                    rule.dimension(),
                    coefficients.len()
                ),
            });
        }
        if coefficients[0] != 1 {
            return Err(Error::InvariantViolation {
                detail: format!("constant coefficient is {}, must be 1", coefficients[0]),
            });
        }
        if let Some(a) = (1..coefficients.len()).find(|&a| !coefficients[a].is_multiple_of(2)) {
            return Err(Error::InvariantViolation {
                detail: format!("coefficient {a} is {}, must be even", coefficients[a]),
            });
        }
        Ok(WeightEnumerator {
            rule,
            d,
            coefficients,
        })
    }

    pub fn rule(&self) -> &LatticeRule {
        &self.rule
    }

    pub fn box_radius(&self) -> BoxRadius {
        self.d
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Evaluates the polynomial at `z` by Horner's scheme. Coefficients
    /// above 2^53 lose precision in the conversion to `f64`; counting stays
    /// exact regardless because it never goes through this path.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            acc = acc * z + c as f64;
        }
        acc
    }

    /// Total number of dual vectors in the box, `W(1)`.
    pub fn dual_count(&self) -> u128 {
        self.coefficients.iter().map(|&c| c as u128).sum()
    }

    /// Reads the trigonometric degree off the coefficient prefix.
    ///
    /// With `t` the first positive norm whose count is nonzero, the degree
    /// is `min(t - 1, d)`: the box contains *every* vector of norm `<= d`,
    /// so a zero prefix through `a` certifies that no dual of norm `<= a`
    /// exists, but zero counts above `d` certify nothing (a norm-`(d+1)`
    /// dual may stick out of the box). `exact` is claimed only for
    /// `rho < d`; a scan that runs into the cap reports a lower bound.
    pub fn trig_degree(&self) -> TrigDegree {
        let d = u64::from(self.d.get());
        let first_nonzero = (1..self.coefficients.len()).find(|&a| self.coefficients[a] != 0);
        let rho = match first_nonzero {
            Some(t) => (t as u64 - 1).min(d),
            None => d,
        };
        TrigDegree {
            rho,
            exact: rho < d,
            witness: None,
        }
    }
}

/// A nonzero integer vector `k` with `k · g ≡ 0 (mod N)`, together with its
/// ℓ1 norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualVector {
    components: Vec<i64>,
    norm: u64,
}

impl DualVector {
    pub fn new(components: Vec<i64>) -> Self {
        let norm = l1_norm(&components);
        DualVector { components, norm }
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    /// Checks membership in the dual lattice of `rule`. Vectors of the
    /// wrong dimension are simply not dual.
    pub fn is_dual_to(&self, rule: &LatticeRule) -> bool {
        if self.components.len() != rule.dimension() {
            return false;
        }
        let n = rule.modulus() as i128;
        let dot = self
            .components
            .iter()
            .zip(rule.generator())
            .map(|(&k, &g)| k as i128 * g as i128)
            .fold(0i128, |acc, term| (acc + term).rem_euclid(n));
        dot == 0
    }
}

/// Sum of absolute component values.
pub fn l1_norm(components: &[i64]) -> u64 {
    components.iter().map(|&k| k.unsigned_abs()).sum()
}

/// Trigonometric degree `rho` of a rule: every multivariate trigonometric
/// polynomial of degree `<= rho` is integrated exactly.
///
/// `exact` says whether `rho` is the true degree or just a certified lower
/// bound (the search that produced it ran out of box). An exact result from
/// a dual-lattice engine carries a `witness`: a minimal-norm nonzero dual
/// vector, whose norm is `rho + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigDegree {
    pub rho: u64,
    pub exact: bool,
    pub witness: Option<DualVector>,
}
