//! Trigonometric degree via shortest nonzero dual vector.
//!
//! The degree of a rule is one less than the minimal ℓ1 norm of a nonzero
//! dual vector, so instead of counting every dual (the enumerator engines)
//! it suffices to run a shortest-path relaxation over residue classes:
//! state (coordinate, residue of the partial dot product), edge weight
//! `|k|` for choosing `k` at that coordinate. One flag per state records
//! whether the prefix is still all zeros, which keeps the genuinely zero
//! vector from claiming the minimum. Cost `O(N d s)` — one factor `d`
//! cheaper than the counting DP.

use crate::enumerator::{DualVector, TrigDegree};
use crate::error::{Error, Result};
use crate::rule::{BoxRadius, LatticeRule};

/// Upper bound on relaxations, roughly `N * d_max * s`.
pub const DEGREE_OP_BUDGET: u128 = 1_000_000_000;

const UNREACHED: u32 = u32::MAX;

/// Minimal ℓ1 norm of a nonzero dual vector with components in
/// `{-d_max, …, d_max}`, reported as a degree.
///
/// If the found minimum `m` satisfies `m <= d_max` the answer is exact —
/// any dual of norm `<= m` has every component within `d_max`, so none was
/// missed — and a minimal witness is attached. Otherwise every dual the box
/// can see has norm `> d_max`, and so does every vector outside the box
/// (some component already exceeds `d_max`); the true degree is then at
/// least `d_max` and the result reports that bound with `exact = false`.
///
/// Relaxations run in a fixed order — coordinates as given, `k` ascending
/// from `-d_max`, the all-zero prefix offered before nonzero ones, ties
/// keep the earlier entry — so the witness is reproducible run to run.
pub fn trig_degree_dp(rule: &LatticeRule, d_max: BoxRadius) -> Result<TrigDegree> {
    let n = rule.modulus();
    let s = rule.dimension();
    let ops = n as u128 * u128::from(d_max.get()) * s as u128;
    if ops > DEGREE_OP_BUDGET {
        return Err(Error::BudgetExceeded {
            required: ops,
            budget: DEGREE_OP_BUDGET,
        });
    }

    let n_us = n as usize;
    let radius = i64::from(d_max.get());

    // prev[r]: minimal norm of a nonzero prefix reaching residue r with the
    // coordinates folded so far. The all-zero prefix (residue 0, norm 0) is
    // not stored; it feeds every layer as an extra source below.
    let mut prev = vec![UNREACHED; n_us];
    // choices[j][r]: (k, from_zero_prefix) that set the layer-(j+1) minimum
    // at residue r; kept for witness reconstruction.
    let mut choices: Vec<Vec<(i32, bool)>> = Vec::with_capacity(s);

    for &g in rule.generator() {
        let mut cur = vec![UNREACHED; n_us];
        let mut choice = vec![(0i32, false); n_us];
        for k in -radius..=radius {
            let shift = (k as i128 * g as i128).rem_euclid(n as i128) as u64;
            let k_abs = k.unsigned_abs() as u32;
            if k != 0 {
                // Zero-prefix source: picking k here makes the vector nonzero.
                let target = shift as usize;
                if k_abs < cur[target] {
                    cur[target] = k_abs;
                    choice[target] = (k as i32, true);
                }
            }
            for (r, &base) in prev.iter().enumerate() {
                if base == UNREACHED {
                    continue;
                }
                let target = ((r as u64 + shift) % n) as usize;
                let cand = base + k_abs;
                if cand < cur[target] {
                    cur[target] = cand;
                    choice[target] = (k as i32, false);
                }
            }
        }
        choices.push(choice);
        prev = cur;
    }

    let found = prev[0];
    if found == UNREACHED || u64::from(found) > u64::from(d_max.get()) {
        return Ok(TrigDegree {
            rho: u64::from(d_max.get()),
            exact: false,
            witness: None,
        });
    }

    // Walk the recorded choices backwards from (layer s, residue 0). The
    // chain must end at a zero-prefix source: layer-1 entries have no other
    // kind.
    let mut components = vec![0i64; s];
    let mut residue = 0u64;
    let mut layer = s;
    loop {
        debug_assert!(layer >= 1, "witness walk escaped the table");
        let (k, from_zero) = choices[layer - 1][residue as usize];
        components[layer - 1] = i64::from(k);
        if from_zero {
            break;
        }
        let g = rule.generator()[layer - 1];
        let shift = (i128::from(k) * g as i128).rem_euclid(n as i128) as u64;
        residue = (residue + n - shift) % n;
        layer -= 1;
    }

    let witness = DualVector::new(components);
    debug_assert!(witness.is_dual_to(rule));
    debug_assert_eq!(witness.norm(), u64::from(found));
    Ok(TrigDegree {
        rho: u64::from(found) - 1,
        exact: true,
        witness: Some(witness),
    })
}

/// Degree with the box guaranteed wide enough for an exact answer:
/// `(N, 0, …, 0)` is always a nonzero dual of norm `N`, so `d_max = N`
/// never comes back box-limited.
pub fn trig_degree(rule: &LatticeRule) -> Result<TrigDegree> {
    let n = rule.modulus();
    let ops = n as u128 * n as u128 * rule.dimension() as u128;
    if ops > DEGREE_OP_BUDGET {
        return Err(Error::BudgetExceeded {
            required: ops,
            budget: DEGREE_OP_BUDGET,
        });
    }
    // The budget bounds N * N * s, so the cast cannot truncate.
    let degree = trig_degree_dp(rule, BoxRadius::new(n as u32)?)?;
    debug_assert!(degree.exact);
    Ok(degree)
}
