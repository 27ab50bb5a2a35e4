//! Symmetry invariants of the weight enumerator.
//!
//! Three transformations of a rule permute its dual lattice without
//! changing any ℓ1 norm, so the full coefficient vector — and hence the
//! degree — must be untouched: permuting coordinates, negating a subset of
//! generator entries (`g_j → N − g_j`, which mirrors the dual axis), and
//! scaling the whole vector by a unit of `Z_N` (a bijection of the duals).

use latqd::degree::trig_degree;
use latqd::engines::residue_dp;
use latqd::rule::gcd;
use latqd::{BoxRadius, LatticeRule};
use proptest::collection::vec;
use proptest::prelude::*;

fn instances() -> impl Strategy<Value = (LatticeRule, BoxRadius)> {
    (2i64..=30, 1usize..=3).prop_flat_map(|(n, s)| {
        (vec(1..n, s), 1u32..=3)
            .prop_map(move |(g, d)| (LatticeRule::new(n, &g).unwrap(), BoxRadius::new(d).unwrap()))
    })
}

/// The same instance plus a shuffled copy of its coordinate order.
fn permuted_instances() -> impl Strategy<Value = (LatticeRule, BoxRadius, Vec<usize>)> {
    instances().prop_flat_map(|(rule, d)| {
        let order: Vec<usize> = (0..rule.dimension()).collect();
        Just(order)
            .prop_shuffle()
            .prop_map(move |order| (rule.clone(), d, order))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coordinate_permutation_preserves_the_enumerator(
        (rule, d, order) in permuted_instances(),
    ) {
        let g: Vec<i64> = order.iter().map(|&j| rule.generator()[j] as i64).collect();
        let permuted = LatticeRule::new(rule.modulus() as i64, &g).unwrap();
        let transformed = residue_dp(&permuted, d).unwrap();
        let original = residue_dp(&rule, d).unwrap();
        prop_assert_eq!(transformed.coefficients(), original.coefficients());
    }

    #[test]
    fn componentwise_negation_preserves_the_enumerator(
        (rule, d) in instances(),
        mask in vec(any::<bool>(), 3),
    ) {
        let n = rule.modulus() as i64;
        let g: Vec<i64> = rule
            .generator()
            .iter()
            .zip(mask.iter().chain(std::iter::repeat(&false)))
            .map(|(&c, &flip)| if flip { n - c as i64 } else { c as i64 })
            .collect();
        let negated = LatticeRule::new(n, &g).unwrap();
        let transformed = residue_dp(&negated, d).unwrap();
        let original = residue_dp(&rule, d).unwrap();
        prop_assert_eq!(transformed.coefficients(), original.coefficients());
    }

    #[test]
    fn unit_scaling_preserves_enumerator_and_degree(
        (rule, d) in instances(),
        raw in 1u64..10_000,
    ) {
        let n = rule.modulus();
        // Map the raw draw to the nearest unit at or above it (wrapping),
        // so every draw yields a valid test case.
        let mut unit = 1 + raw % (n - 1).max(1);
        while gcd(unit, n) != 1 {
            unit = 1 + unit % (n - 1);
        }
        let scaled = rule.apply_unit(unit).unwrap();
        let transformed = residue_dp(&scaled, d).unwrap();
        let original = residue_dp(&rule, d).unwrap();
        prop_assert_eq!(transformed.coefficients(), original.coefficients());
        let a = trig_degree(&scaled).unwrap();
        let b = trig_degree(&rule).unwrap();
        prop_assert_eq!(a.rho, b.rho);
        prop_assert_eq!(a.exact, b.exact);
    }
}
