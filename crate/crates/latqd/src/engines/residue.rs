//! Exact transfer-matrix count over residue classes.

use crate::enumerator::{box_point_count, WeightEnumerator};
use crate::error::{Error, Result};
use crate::rule::{BoxRadius, LatticeRule};

/// Upper bound on table updates, roughly `N * (2d+1) * (ds+1) * s`.
pub const RESIDUE_DP_OP_BUDGET: u128 = 2_000_000_000;

/// Counts dual vectors per ℓ1 norm with a dynamic program.
///
/// Layer `j` of the table holds, for every pair (residue of the partial dot
/// product mod N, partial ℓ1 norm), the number of prefixes `(k_1, …, k_j)`
/// realizing it. Folding coordinate `j+1` shifts the residue by
/// `k * g_{j+1}` and the norm by `|k|` for each choice of `k`. The counts
/// agree bit for bit with [`brute_force`](super::brute_force) — the same
/// integers, merely grouped by residue instead of listed point by point —
/// but cost `O(N * d^2 * s^2)` instead of `(2d+1)^s`.
pub fn residue_dp(rule: &LatticeRule, d: BoxRadius) -> Result<WeightEnumerator> {
    // Counts must stay representable even though the DP never walks the box.
    box_point_count(d, rule.dimension())?;
    let n = rule.modulus();
    let s = rule.dimension();
    let width = d.get() as usize * s + 1;
    let ops = n as u128 * d.side() as u128 * width as u128 * s as u128;
    if ops > RESIDUE_DP_OP_BUDGET {
        return Err(Error::BudgetExceeded {
            required: ops,
            budget: RESIDUE_DP_OP_BUDGET,
        });
    }

    let radius = i64::from(d.get());
    // table[r * width + a] = number of prefixes with residue r and norm a.
    let mut table = vec![0u64; n as usize * width];
    table[0] = 1;
    // Highest norm reachable with the coordinates folded so far; bounding
    // the inner loop by it skips the empty upper triangle of early layers.
    let mut reach = 0usize;
    for &g in rule.generator() {
        let mut next = vec![0u64; n as usize * width];
        for k in -radius..=radius {
            let shift = (k as i128 * g as i128).rem_euclid(n as i128) as u64;
            let k_abs = k.unsigned_abs() as usize;
            for r in 0..n {
                let src = (r as usize) * width;
                let dst = (((r + shift) % n) as usize) * width + k_abs;
                for a in 0..=reach {
                    let c = table[src + a];
                    if c != 0 {
                        next[dst + a] += c;
                    }
                }
            }
        }
        reach += d.get() as usize;
        table = next;
    }
    // Row of residue 0 holds the dual counts by norm.
    table.truncate(width);
    WeightEnumerator::new(rule.clone(), d, table)
}
