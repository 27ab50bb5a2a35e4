//! Rule construction on arbitrary input: every outcome is Ok with the
//! documented invariants or a typed error — never a panic or a bad rule.

#![no_main]

use arbitrary::Arbitrary;
use latqd::LatticeRule;
use libfuzzer_sys::fuzz_target;

#[derive(Arbitrary, Debug)]
struct Input {
    modulus: i64,
    generator: Vec<i64>,
    unit: u64,
}

fuzz_target!(|input: Input| {
    let rule = match LatticeRule::new(input.modulus, &input.generator) {
        Ok(rule) => rule,
        Err(_) => return,
    };
    assert!(rule.modulus() >= 2);
    assert_eq!(rule.dimension(), input.generator.len());
    let n = rule.modulus();
    assert!(rule.generator().iter().all(|&g| g >= 1 && g < n));

    // Unit scaling either succeeds with entries back in range or reports
    // the non-unit; both rules describe the same dual lattice when it works.
    if let Ok(scaled) = rule.apply_unit(input.unit) {
        assert_eq!(scaled.modulus(), n);
        assert!(scaled.generator().iter().all(|&g| g >= 1 && g < n));
    }
});
