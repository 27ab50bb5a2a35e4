//! The `latqd bench` scaling harness.
//!
//! Each sweep doubles one parameter along a fixed ladder while pinning the
//! other two, times the chosen engine, and reports the median of repeated
//! runs plus the ratio to the previous row — the number the complexity
//! claims are judged by. Medians over calibrated ~20 ms batches keep
//! scheduler noise out of the ratios; no plotting is done here, the table
//! is meant to be piped into whatever draws the picture.

use std::hint::black_box;
use std::time::Instant;

use latqd::degree::trig_degree_dp;
use latqd::engines::charsum;
use latqd::rule::mul_mod;
use latqd::{BoxRadius, LatticeRule};

use crate::args::{BenchEngineArg, SweepArg};
use crate::document::{BenchRow, BenchStanza, FixedStanza, MachineStanza};

/// Doubling ladder for the modulus sweep; all four values are prime, so
/// Korobov vectors over them never contain a vanishing power.
const LADDER_N: [u64; 4] = [1009, 2003, 4001, 8009];
/// Dimension ladder (modulus pinned to a prime).
const LADDER_S: [usize; 4] = [1, 2, 4, 8];
/// Box-radius ladder.
const LADDER_D: [u32; 4] = [2, 4, 8, 16];

const FIXED_N: u64 = 2003;
const FIXED_S: usize = 3;
const FIXED_D: u32 = 4;

/// Target duration of one timed batch.
const BATCH_NS: u128 = 20_000_000;

pub struct BenchParams {
    pub sweep: SweepArg,
    pub engine: BenchEngineArg,
    pub repeats: u32,
}

pub fn run_bench(params: &BenchParams) -> Result<BenchStanza, String> {
    if params.repeats == 0 {
        return Err("--repeats must be at least 1".into());
    }

    let points: Vec<(u64, u64, usize, u32)> = match params.sweep {
        SweepArg::N => LADDER_N.iter().map(|&n| (n, n, FIXED_S, FIXED_D)).collect(),
        SweepArg::S => LADDER_S
            .iter()
            .map(|&s| (s as u64, FIXED_N, s, FIXED_D))
            .collect(),
        SweepArg::D => LADDER_D
            .iter()
            .map(|&d| (u64::from(d), FIXED_N, FIXED_S, d))
            .collect(),
    };

    let mut rows: Vec<BenchRow> = Vec::with_capacity(points.len());
    for (param, n, s, d) in points {
        let rule = korobov_rule(n, s);
        let d = BoxRadius::new(d).expect("ladder radii are positive");
        let run: Box<dyn Fn()> = match params.engine {
            BenchEngineArg::Charsum => Box::new(move || {
                black_box(charsum(black_box(&rule), d));
            }),
            BenchEngineArg::DpDegree => Box::new(move || {
                black_box(
                    trig_degree_dp(black_box(&rule), d)
                        .expect("ladder sizes stay far under the op budget"),
                );
            }),
        };
        let median_ns = median_ns(run.as_ref(), params.repeats);
        let ratio = rows
            .last()
            .map(|prev| median_ns as f64 / prev.median_ns.max(1) as f64);
        rows.push(BenchRow {
            param,
            median_ns,
            ratio,
        });
    }

    let fixed = match params.sweep {
        SweepArg::N => FixedStanza {
            n: None,
            s: Some(FIXED_S),
            d: Some(FIXED_D),
        },
        SweepArg::S => FixedStanza {
            n: Some(FIXED_N),
            s: None,
            d: Some(FIXED_D),
        },
        SweepArg::D => FixedStanza {
            n: Some(FIXED_N),
            s: Some(FIXED_S),
            d: None,
        },
    };

    Ok(BenchStanza {
        sweep: params.sweep.name().into(),
        engine: params.engine.name().into(),
        repeats: params.repeats,
        fixed,
        machine: MachineStanza {
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
            threads: rayon::current_num_threads(),
        },
        rows,
    })
}

/// A deterministic well-spread generator: the Korobov vector with
/// parameter ⌊N/φ⌋ (the golden section keeps powers away from short
/// cycles). The ladder moduli are prime, so every power is a valid entry.
fn korobov_rule(n: u64, s: usize) -> LatticeRule {
    let a = ((n as f64 * 0.618_033_988_749_894_9) as u64).clamp(1, n - 1);
    let mut g = Vec::with_capacity(s);
    let mut power = 1u64;
    for _ in 0..s {
        g.push(power as i64);
        power = mul_mod(power, a, n);
    }
    LatticeRule::new(n as i64, &g).expect("prime modulus keeps every power a unit")
}

/// Median over `repeats` batches; each batch runs enough iterations to
/// fill [`BATCH_NS`], measured around the whole batch.
fn median_ns(run: &dyn Fn(), repeats: u32) -> u64 {
    // Calibration run, also the warm-up.
    let started = Instant::now();
    run();
    let once = started.elapsed().as_nanos().max(1);
    let iters = (BATCH_NS / once).clamp(1, 1_000_000) as u32;

    let mut samples: Vec<u64> = (0..repeats)
        .map(|_| {
            let started = Instant::now();
            for _ in 0..iters {
                run();
            }
            (started.elapsed().as_nanos() / u128::from(iters)) as u64
        })
        .collect();
    samples.sort_unstable();
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2
    }
}
