//! Differential check of three engines on fuzzer-chosen small instances:
//! the exact engines must agree outright, the float engine after rounding.

#![no_main]

use arbitrary::Arbitrary;
use latqd::engines::{brute_force, charsum, default_tolerance, residue_dp, round_coeffs};
use latqd::{BoxRadius, LatticeRule};
use libfuzzer_sys::fuzz_target;

/// Raw fuzzer choices, folded into a small instance below so every run is
/// microseconds: N in [2, 31], s in [1, 3], d in [1, 4].
#[derive(Arbitrary, Debug)]
struct Choice {
    modulus: u8,
    generator: Vec<u8>,
    d: u8,
}

fuzz_target!(|choice: Choice| {
    if choice.generator.is_empty() || choice.generator.len() > 3 {
        return;
    }
    let n = i64::from(choice.modulus % 30) + 2;
    let g: Vec<i64> = choice
        .generator
        .iter()
        .map(|&b| i64::from(b) % (n - 1).max(1) + 1)
        .collect();
    let d = BoxRadius::new(u32::from(choice.d % 4) + 1).expect("radius in range");
    let rule = LatticeRule::new(n, &g).expect("entries folded into range");

    let oracle = brute_force(&rule, d).expect("box of at most 729 points");
    assert_eq!(
        oracle,
        residue_dp(&rule, d).expect("ops far under budget"),
        "residue_dp drifted from brute force"
    );

    let tol = default_tolerance(&rule, d);
    let rounded = round_coeffs(&charsum(&rule, d), tol).expect("small sums round cleanly");
    assert_eq!(
        oracle, rounded.enumerator,
        "charsum drifted from brute force"
    );
});
