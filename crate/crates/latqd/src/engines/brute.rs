//! Direct enumeration of the index box. Slow and obviously correct: this is
//! the oracle the other engines are validated against.

use crate::enumerator::{box_point_count, WeightEnumerator};
use crate::error::{Error, Result};
use crate::rule::{BoxRadius, LatticeRule};

/// Upper bound on the number of box points the oracle will walk.
pub const BRUTE_FORCE_BOX_BUDGET: u128 = 100_000_000;

/// Counts dual vectors per ℓ1 norm by visiting every point of
/// `{-d, …, d}^s` and testing `k · g ≡ 0 (mod N)` directly.
pub fn brute_force(rule: &LatticeRule, d: BoxRadius) -> Result<WeightEnumerator> {
    let total = box_point_count(d, rule.dimension())?;
    if total > BRUTE_FORCE_BOX_BUDGET {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: BRUTE_FORCE_BOX_BUDGET,
        });
    }
    let n = rule.modulus();
    let radius = i64::from(d.get());
    // residues[j][k + d] = k * g_j mod N with the representative in 0..N,
    // precomputed so the walk below only adds and reduces.
    let residues: Vec<Vec<u64>> = rule
        .generator()
        .iter()
        .map(|&g| {
            (-radius..=radius)
                .map(|k| (k as i128 * g as i128).rem_euclid(n as i128) as u64)
                .collect()
        })
        .collect();
    let mut counts = vec![0u64; d.get() as usize * rule.dimension() + 1];
    walk(&residues, n, radius, 0, 0, &mut counts);
    WeightEnumerator::new(rule.clone(), d, counts)
}

fn walk(residues: &[Vec<u64>], n: u64, radius: i64, residue: u64, norm: u64, counts: &mut [u64]) {
    match residues {
        [] => {
            if residue == 0 {
                counts[norm as usize] += 1;
            }
        }
        [first, rest @ ..] => {
            for (offset, &r) in first.iter().enumerate() {
                let k_abs = (offset as i64 - radius).unsigned_abs();
                walk(rest, n, radius, (residue + r) % n, norm + k_abs, counts);
            }
        }
    }
}
