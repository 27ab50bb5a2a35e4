//! Character-sum engine: the enumerator as an average over rule points.
//!
//! Summing the character `e^{2πi n k·g / N}` over the points `n` of the
//! rule gives `N` exactly when `k` is dual and `0` otherwise. Dividing by
//! `N` and attaching `z^{|k|₁}` to each box point therefore reproduces the
//! weight enumerator, and the sum over the box factorizes per coordinate:
//! each point `n` contributes the product over `j` of the real polynomial
//!
//! ```text
//! 1 + Σ_{a=1}^{d} 2 cos(2π n a g_j / N) · z^a
//! ```
//!
//! (the `k` and `-k` terms of coordinate `j` pair into a cosine). The
//! engine averages these per-point products — `O(N)` work split across
//! threads — instead of walking `(2d+1)^s` box points.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::engines::float::FloatEnumerator;
use crate::engines::reduce::tree_reduce;
use crate::rule::{add_mod, mul_mod, BoxRadius, LatticeRule};

/// `cos(2π r / n)` with the angle reduced through the exact integer
/// residue `r`, never through a floating-point multiple of the full turn.
/// Every cosine the engines consume comes from this one expression, which
/// is what makes the table and direct paths bit-identical.
fn cos_frac(r: u64, n: u64) -> f64 {
    (TAU * (r as f64 / n as f64)).cos()
}

/// Cosine source: a full table of `cos(2π r / N)` when `N` is small enough
/// for the table to pay for itself, the direct expression otherwise.
enum Cosines {
    Table(Vec<f64>),
    Direct,
}

/// Largest modulus for which the table (8 bytes per residue) is built.
const COS_TABLE_MAX_MODULUS: u64 = 1 << 20;

impl Cosines {
    fn for_modulus(n: u64) -> Cosines {
        if n <= COS_TABLE_MAX_MODULUS {
            Cosines::Table((0..n).map(|r| cos_frac(r, n)).collect())
        } else {
            Cosines::Direct
        }
    }

    fn get(&self, r: u64, n: u64) -> f64 {
        match self {
            Cosines::Table(values) => values[r as usize],
            Cosines::Direct => cos_frac(r, n),
        }
    }
}

/// Coefficients of the factor polynomial of one (point, coordinate) pair.
fn factor_coefficients(node: u64, g: u64, n: u64, d: BoxRadius, cos: &Cosines) -> Vec<f64> {
    let step = mul_mod(node % n, g, n);
    let mut coefficients = Vec::with_capacity(d.get() as usize + 1);
    coefficients.push(1.0);
    let mut r = 0u64;
    for _ in 0..d.get() {
        r = add_mod(r, step, n);
        coefficients.push(2.0 * cos.get(r, n));
    }
    coefficients
}

/// The factor polynomial `1 + Σ_a 2 cos(2π n a g / N) z^a` contributed by
/// rule point `n` (here `node`) in one coordinate with generator `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerNodeFactor {
    coefficients: Vec<f64>,
}

impl PerNodeFactor {
    pub fn new(node: u64, g: u64, modulus: u64, d: BoxRadius) -> Self {
        PerNodeFactor {
            coefficients: factor_coefficients(node, g, modulus, d, &Cosines::Direct),
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Value of the factor at `z`, by Horner's scheme.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Product of the factor polynomials of one rule point across coordinates:
/// a degree-`ds` polynomial in `z`.
fn node_polynomial(rule: &LatticeRule, d: BoxRadius, cos: &Cosines, node: u64) -> Vec<f64> {
    let n = rule.modulus();
    let mut acc = vec![1.0];
    for &g in rule.generator() {
        let factor = factor_coefficients(node, g, n, d, cos);
        acc = convolve(&acc, &factor);
    }
    acc
}

fn add_vectors(mut a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    for (x, &y) in a.iter_mut().zip(&b) {
        *x += y;
    }
    a
}

/// Computes the full coefficient vector by averaging node polynomials over
/// all `N` rule points. Exactness of the identity means each averaged
/// coefficient lands within floating-point noise of the true integer count;
/// rounding is a separate, checked step
/// ([`round_coeffs`](super::round_coeffs)), and it is the rounding step
/// that rejects counts too large to recover from floats.
pub fn charsum(rule: &LatticeRule, d: BoxRadius) -> FloatEnumerator {
    let n = rule.modulus();
    let cos = Cosines::for_modulus(n);
    let sum = tree_reduce(
        0,
        n,
        &|node| node_polynomial(rule, d, &cos, node),
        &add_vectors,
    );
    let scale = 1.0 / n as f64;
    let coefficients = sum.into_iter().map(|c| c * scale).collect();
    FloatEnumerator::new(rule.clone(), d, coefficients)
}

/// Evaluates `W(z)` at a single point straight from the character-sum
/// identity, without ever forming coefficients: `O(N s d)` time and `O(1)`
/// memory per node. Works for any complex `z`, not just the unit circle.
pub fn evaluate_at(rule: &LatticeRule, d: BoxRadius, z: Complex64) -> Complex64 {
    evaluate_at_with(rule, d, z, &Cosines::for_modulus(rule.modulus()))
}

/// Evaluation path shared with the FFT engine, which samples many points
/// and wants the cosine table built once.
pub(crate) fn evaluate_at_many(
    rule: &LatticeRule,
    d: BoxRadius,
    points: &[Complex64],
) -> Vec<Complex64> {
    let cos = Cosines::for_modulus(rule.modulus());
    points
        .iter()
        .map(|&z| evaluate_at_with(rule, d, z, &cos))
        .collect()
}

fn evaluate_at_with(rule: &LatticeRule, d: BoxRadius, z: Complex64, cos: &Cosines) -> Complex64 {
    let n = rule.modulus();
    let total = tree_reduce(0, n, &|node| node_value(rule, d, cos, node, z), &|a, b| {
        a + b
    });
    total / n as f64
}

/// Product over coordinates of the factor value at `z` for one rule point,
/// accumulating powers of `z` and the exact residue `n*a*g mod N` in step.
fn node_value(
    rule: &LatticeRule,
    d: BoxRadius,
    cos: &Cosines,
    node: u64,
    z: Complex64,
) -> Complex64 {
    let n = rule.modulus();
    let mut product = Complex64::new(1.0, 0.0);
    for &g in rule.generator() {
        let step = mul_mod(node, g, n);
        let mut factor = Complex64::new(1.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        let mut r = 0u64;
        for _ in 0..d.get() {
            r = add_mod(r, step, n);
            power *= z;
            factor += power * (2.0 * cos.get(r, n));
        }
        product *= factor;
    }
    product
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::brute::brute_force;
    use crate::engines::float::{default_tolerance, round_coeffs};

    fn rule(n: i64, g: &[i64]) -> LatticeRule {
        LatticeRule::new(n, g).unwrap()
    }

    fn radius(d: u32) -> BoxRadius {
        BoxRadius::new(d).unwrap()
    }

    #[test]
    fn factor_polynomial_for_node_zero_is_all_twos() {
        // All cosines are cos(0) = 1.
        let f = PerNodeFactor::new(0, 3, 7, radius(2));
        assert_eq!(f.coefficients(), &[1.0, 2.0, 2.0]);
    }

    #[test]
    fn factor_polynomial_uses_exact_residues() {
        // N=2, g=1, node 1: residues alternate 1, 0 → cosines -1, 1.
        let f = PerNodeFactor::new(1, 1, 2, radius(2));
        assert_eq!(f.coefficients(), &[1.0, -2.0, 2.0]);
    }

    #[test]
    fn averages_to_the_hand_counted_integers() {
        // N=2, g=(1,1), d=1: nodes contribute (1+2z)^2 and (1-2z)^2, whose
        // mean is 1 + 4z^2.
        let f = charsum(&rule(2, &[1, 1]), radius(1));
        let want = [1.0, 0.0, 4.0];
        for (c, w) in f.coefficients().iter().zip(want) {
            assert!((c - w).abs() < 1e-12, "{c} vs {w}");
        }

        // N=3, g=(1,2), d=1: nodes 1 and 2 both contribute (1-z)^2.
        let f = charsum(&rule(3, &[1, 2]), radius(1));
        let want = [1.0, 0.0, 2.0];
        for (c, w) in f.coefficients().iter().zip(want) {
            assert!((c - w).abs() < 1e-12, "{c} vs {w}");
        }
    }

    #[test]
    fn rounds_to_brute_force_counts() {
        for (n, g, d) in [
            (5i64, vec![1i64, 2], 2u32),
            (4, vec![1], 4),
            (12, vec![5, 7], 3),
            (30, vec![7, 11, 13], 2),
        ] {
            let rule = rule(n, &g);
            let d = radius(d);
            let float = charsum(&rule, d);
            let tol = default_tolerance(&rule, d);
            let rounded = round_coeffs(&float, tol).unwrap();
            assert_eq!(rounded.enumerator, brute_force(&rule, d).unwrap());
        }
    }

    #[test]
    fn point_evaluation_matches_the_polynomial() {
        let r = rule(3, &[1, 2]);
        let d = radius(1);
        let v = evaluate_at(&r, d, Complex64::new(0.5, 0.0));
        // W(z) = 1 + 2 z^2, so W(0.5) = 1.5; the three node values are
        // 4, 0.25, 0.25 and their mean is exactly representable.
        assert!((v.re - 1.5).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);

        // Off the real axis against Horner on exact counts.
        let w = brute_force(&r, d).unwrap();
        let z = Complex64::from_polar(1.0, 1.234);
        let direct = evaluate_at(&r, d, z);
        let horner = w.eval(z);
        assert!((direct - horner).norm() < 1e-12);
    }

    #[test]
    fn table_and_direct_cosines_agree_bit_for_bit() {
        let n = 97u64;
        let table = Cosines::for_modulus(n);
        for r in 0..n {
            assert_eq!(
                table.get(r, n).to_bits(),
                Cosines::Direct.get(r, n).to_bits()
            );
        }
    }
}
