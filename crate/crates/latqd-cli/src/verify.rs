//! The `latqd verify` property suite: seeded random instances pushed
//! through every engine, with cross-checks grouped into named classes.
//!
//! Classes run in a fixed order and the suite stops at the first failure;
//! the offending instance is then shrunk (smaller d, fewer coordinates,
//! unit generator entries, smaller modulus) until no reduction still
//! fails, and that minimal instance is reported for reproduction. All
//! randomness comes from one seeded generator, so a given flag set prints
//! byte-identical output on every run and at every thread count.

use std::f64::consts::TAU;

use latqd::degree::trig_degree;
use latqd::engines::{
    brute_force, charsum, default_tolerance, evaluate_at, fft_recover, residue_dp, round_coeffs,
};
use latqd::rule::gcd;
use latqd::{box_point_count, BoxRadius, Complex64, LatticeRule};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::document::{ClassStanza, FailingStanza, VerifyStanza};

/// Instances are shrunk to fit this many box points, matching the suite's
/// advertised domain.
const BOX_CAP: u128 = 1_000_000;

pub struct VerifyParams {
    pub cases: u64,
    pub seed: u64,
    pub max_n: i64,
    pub max_s: usize,
    pub max_d: u32,
    pub inject_fault: bool,
}

pub struct VerifyReport {
    pub stanza: VerifyStanza,
    pub text: String,
    pub pass: bool,
}

/// One random test instance plus the per-instance random inputs the
/// classes need. `angle` and `unit_raw` survive shrinking unchanged so a
/// shrunk instance exercises the same code path as the original.
#[derive(Clone)]
struct Instance {
    rule: LatticeRule,
    d: BoxRadius,
    angle: f64,
    unit_raw: u64,
}

type ClassFn = fn(&Instance, bool) -> Result<(), String>;

const CLASSES: &[(&str, ClassFn)] = &[
    ("engine-equivalence", engine_equivalence),
    ("point-evaluation", point_evaluation),
    ("symmetry", symmetry),
    ("degree-consistency", degree_consistency),
];

pub fn run_verify(params: &VerifyParams) -> Result<VerifyReport, String> {
    if params.max_n < 2 {
        return Err("--max-n must be at least 2".into());
    }
    if params.max_s < 1 {
        return Err("--max-s must be at least 1".into());
    }
    if params.max_d < 1 {
        return Err("--max-d must be at least 1".into());
    }

    let instances = draw_instances(params);
    let mut classes = Vec::new();
    let mut failing: Option<FailingStanza> = None;
    let mut text = String::new();

    for &(name, class) in CLASSES {
        if failing.is_some() {
            classes.push(ClassStanza {
                name: name.into(),
                cases: 0,
                status: "skipped".into(),
            });
            text.push_str(&format!("verify: {name} skipped\n"));
            continue;
        }
        match first_failure(&instances, class, params.inject_fault) {
            None => {
                classes.push(ClassStanza {
                    name: name.into(),
                    cases: instances.len() as u64,
                    status: "pass".into(),
                });
                text.push_str(&format!(
                    "verify: {name} pass ({} cases)\n",
                    instances.len()
                ));
            }
            Some((index, instance)) => {
                let minimal = shrink(&instance, class, params.inject_fault);
                let detail =
                    class(&minimal, params.inject_fault).expect_err("shrinking preserves failure");
                let stanza = FailingStanza {
                    class: name.into(),
                    n: minimal.rule.modulus(),
                    g: minimal.rule.generator().to_vec(),
                    d: minimal.d.get(),
                    detail: detail.clone(),
                };
                text.push_str(&format!("verify: {name} FAIL at case {index}\n"));
                text.push_str(&format!(
                    "  minimal failing instance: n={} g={} d={}\n",
                    stanza.n,
                    join(&stanza.g),
                    stanza.d
                ));
                text.push_str(&format!("  detail: {detail}\n"));
                classes.push(ClassStanza {
                    name: name.into(),
                    cases: index + 1,
                    status: "fail".into(),
                });
                failing = Some(stanza);
            }
        }
    }

    let pass = failing.is_none();
    let status = if pass { "PASS" } else { "FAIL" };
    text.push_str(&format!("verify: {status} ({} cases)\n", params.cases));

    let stanza = VerifyStanza {
        cases: params.cases,
        seed: params.seed,
        max_n: params.max_n as u64,
        max_s: params.max_s,
        max_d: params.max_d,
        classes,
        status: status.to_lowercase(),
        failing,
    };
    Ok(VerifyReport { stanza, text, pass })
}

fn join(g: &[u64]) -> String {
    g.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn draw_instances(params: &VerifyParams) -> Vec<Instance> {
    let mut rng = Xoshiro256StarStar::seed_from_u64(params.seed);
    (0..params.cases)
        .map(|_| {
            let n = rng.random_range(2..=params.max_n);
            let mut s = rng.random_range(1..=params.max_s);
            let mut d = rng.random_range(1..=params.max_d);
            // Shrink toward the advertised box cap; radius first, then
            // dimension. (2*1+1)^1 = 3 always fits, so this terminates.
            while !box_fits(d, s) {
                if d > 1 {
                    d -= 1;
                } else {
                    s -= 1;
                }
            }
            let g: Vec<i64> = (0..s).map(|_| rng.random_range(1..n)).collect();
            let angle = rng.random_range(0.0..TAU);
            let unit_raw = rng.random_range(0..u64::MAX);
            Instance {
                rule: LatticeRule::new(n, &g).expect("drawn within the valid range"),
                d: BoxRadius::new(d).expect("kept at least 1"),
                angle,
                unit_raw,
            }
        })
        .collect()
}

fn box_fits(d: u32, s: usize) -> bool {
    BoxRadius::new(d)
        .ok()
        .and_then(|d| box_point_count(d, s).ok())
        .is_some_and(|points| points <= BOX_CAP)
}

fn first_failure(instances: &[Instance], class: ClassFn, fault: bool) -> Option<(u64, Instance)> {
    instances
        .iter()
        .enumerate()
        .find(|(_, instance)| class(instance, fault).is_err())
        .map(|(index, instance)| (index as u64, instance.clone()))
}

/// Greedy shrink: keep applying the first reduction that still fails.
fn shrink(instance: &Instance, class: ClassFn, fault: bool) -> Instance {
    let mut current = instance.clone();
    for _ in 0..200 {
        let Some(smaller) = reductions(&current)
            .into_iter()
            .find(|candidate| class(candidate, fault).is_err())
        else {
            break;
        };
        current = smaller;
    }
    current
}

/// Every one-step reduction of an instance, all still valid rules.
fn reductions(instance: &Instance) -> Vec<Instance> {
    let mut out = Vec::new();
    let n = instance.rule.modulus();
    let g = instance.rule.generator();

    if instance.d.get() > 1 {
        let mut candidate = instance.clone();
        candidate.d = BoxRadius::new(instance.d.get() - 1).expect("still at least 1");
        out.push(candidate);
    }
    if g.len() > 1 {
        for drop in 0..g.len() {
            let kept: Vec<i64> = g
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != drop)
                .map(|(_, &c)| c as i64)
                .collect();
            let mut candidate = instance.clone();
            candidate.rule = LatticeRule::new(n as i64, &kept).expect("entries unchanged");
            out.push(candidate);
        }
    }
    for (j, &c) in g.iter().enumerate() {
        if c != 1 {
            let mut smaller: Vec<i64> = g.iter().map(|&c| c as i64).collect();
            smaller[j] = 1;
            let mut candidate = instance.clone();
            candidate.rule = LatticeRule::new(n as i64, &smaller).expect("1 is always valid");
            out.push(candidate);
        }
    }
    if n > 2 {
        let clamped: Vec<i64> = g.iter().map(|&c| (c as i64).min(n as i64 - 2)).collect();
        let mut candidate = instance.clone();
        candidate.rule =
            LatticeRule::new(n as i64 - 1, &clamped).expect("clamped into the new range");
        out.push(candidate);
    }
    out
}

// --- property classes ---------------------------------------------------

/// All four engines produce the same integer coefficients, and the FFT
/// path's padding-bin and imaginary residuals stay under the tolerance.
/// `fault` corrupts the reference vector so the harness can prove it is
/// able to fail.
fn engine_equivalence(instance: &Instance, fault: bool) -> Result<(), String> {
    let (rule, d) = (&instance.rule, instance.d);
    let oracle = brute_force(rule, d).map_err(|e| format!("brute_force refused: {e}"))?;
    let mut reference = oracle.coefficients().to_vec();
    if fault {
        reference[0] += 1;
    }

    let dp = residue_dp(rule, d).map_err(|e| format!("residue_dp refused: {e}"))?;
    if dp.coefficients() != reference {
        return Err(mismatch("residue_dp", dp.coefficients(), &reference));
    }

    let tol = default_tolerance(rule, d);
    let rounded =
        round_coeffs(&charsum(rule, d), tol).map_err(|e| format!("charsum rounding: {e}"))?;
    if rounded.enumerator.coefficients() != reference {
        return Err(mismatch(
            "charsum",
            rounded.enumerator.coefficients(),
            &reference,
        ));
    }

    let recovery = fft_recover(rule, d);
    if recovery.padding_max > tol {
        return Err(format!(
            "fft padding residual {} exceeds tolerance {}",
            recovery.padding_max, tol
        ));
    }
    if recovery.imag_max > tol {
        return Err(format!(
            "fft imaginary residual {} exceeds tolerance {}",
            recovery.imag_max, tol
        ));
    }
    let rounded =
        round_coeffs(&recovery.enumerator, tol).map_err(|e| format!("fft rounding: {e}"))?;
    if rounded.enumerator.coefficients() != reference {
        return Err(mismatch(
            "fft",
            rounded.enumerator.coefficients(),
            &reference,
        ));
    }
    Ok(())
}

fn mismatch(engine: &str, got: &[u64], want: &[u64]) -> String {
    format!("{engine} disagrees with brute_force: {got:?} vs {want:?}")
}

/// The direct character-sum evaluator agrees with Horner on the exact
/// coefficients, on and off the point z = 1.
fn point_evaluation(instance: &Instance, _fault: bool) -> Result<(), String> {
    let (rule, d) = (&instance.rule, instance.d);
    let w = residue_dp(rule, d).map_err(|e| format!("residue_dp refused: {e}"))?;
    let budget = 1e-9 * w.dual_count() as f64;

    let z = Complex64::from_polar(1.0, instance.angle);
    let gap = (evaluate_at(rule, d, z) - w.eval(z)).norm();
    if gap > budget {
        return Err(format!("W({z}) off by {gap} (budget {budget})"));
    }

    let at_one = evaluate_at(rule, d, Complex64::new(1.0, 0.0));
    let count = w.dual_count() as f64;
    if (at_one.re - count).abs() > budget || at_one.im.abs() > budget {
        return Err(format!("W(1) = {at_one} but the box holds {count} duals"));
    }
    Ok(())
}

/// Coefficients are invariant under coordinate reversal, entrywise
/// negation g_j → N − g_j, and scaling by a unit of Z_N.
fn symmetry(instance: &Instance, _fault: bool) -> Result<(), String> {
    let (rule, d) = (&instance.rule, instance.d);
    let n = rule.modulus();
    let base = residue_dp(rule, d).map_err(|e| format!("residue_dp refused: {e}"))?;

    let reversed: Vec<i64> = rule.generator().iter().rev().map(|&c| c as i64).collect();
    let transformed = residue_dp(
        &LatticeRule::new(n as i64, &reversed).expect("reversal keeps entries valid"),
        d,
    )
    .map_err(|e| format!("residue_dp refused: {e}"))?;
    if transformed.coefficients() != base.coefficients() {
        return Err("coefficients changed under coordinate reversal".into());
    }

    let negated: Vec<i64> = rule
        .generator()
        .iter()
        .map(|&c| n as i64 - c as i64)
        .collect();
    let transformed = residue_dp(
        &LatticeRule::new(n as i64, &negated).expect("negation keeps entries valid"),
        d,
    )
    .map_err(|e| format!("residue_dp refused: {e}"))?;
    if transformed.coefficients() != base.coefficients() {
        return Err("coefficients changed under g -> N - g".into());
    }

    let unit = derive_unit(instance.unit_raw, n);
    let scaled = rule.apply_unit(unit).expect("derive_unit returns a unit");
    let transformed = residue_dp(&scaled, d).map_err(|e| format!("residue_dp refused: {e}"))?;
    if transformed.coefficients() != base.coefficients() {
        return Err(format!("coefficients changed under scaling by unit {unit}"));
    }
    Ok(())
}

/// Maps a raw draw to a unit of Z_N. Walks upward cyclically from the
/// draw; 1 is always a unit, so the walk terminates.
fn derive_unit(raw: u64, n: u64) -> u64 {
    let mut unit = 1 + raw % (n - 1);
    while gcd(unit, n) != 1 {
        unit = 1 + unit % (n - 1);
    }
    unit
}

/// The degree DP agrees with the coefficient scan one norm past its
/// answer, the witness is a genuine minimal dual, and no shorter dual
/// exists.
fn degree_consistency(instance: &Instance, _fault: bool) -> Result<(), String> {
    let rule = &instance.rule;
    let dp = trig_degree(rule).map_err(|e| format!("trig_degree refused: {e}"))?;
    if !dp.exact {
        return Err("default degree run came back box-limited".into());
    }
    let witness = dp.witness.as_ref().ok_or("exact degree without witness")?;
    if witness.norm() != dp.rho + 1 {
        return Err(format!(
            "witness norm {} does not certify rho {}",
            witness.norm(),
            dp.rho
        ));
    }
    if !witness.is_dual_to(rule) {
        return Err(format!("witness {:?} is not dual", witness.components()));
    }

    let d = BoxRadius::new(dp.rho as u32 + 1).expect("rho + 1 >= 1");
    let w = residue_dp(rule, d).map_err(|e| format!("residue_dp refused: {e}"))?;
    let scan = w.trig_degree();
    if scan.rho != dp.rho || !scan.exact {
        return Err(format!(
            "coefficient scan found rho {} (exact {}), DP claimed {}",
            scan.rho, scan.exact, dp.rho
        ));
    }
    for a in 1..=dp.rho as usize {
        if w.coefficients()[a] != 0 {
            return Err(format!("phantom dual of norm {a} below the DP minimum"));
        }
    }
    let minimal = w.coefficients()[dp.rho as usize + 1];
    if minimal < 2 || minimal % 2 != 0 {
        return Err(format!("minimal norm class has odd size {minimal}"));
    }
    Ok(())
}
