//! Command-line front end for the `latqd` library.
//!
//! Thin orchestration only: every numeric result comes from the library,
//! and every run emits exactly one machine-readable document (JSON or CSV)
//! on stdout, diagnostics on stderr, and a documented exit code:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success                                             |
//! | 1    | `verify` found a property violation                 |
//! | 2    | argument or validation error                        |
//! | 3    | float rounding residual exceeded the tolerance      |
//! | 4    | work-size budget exceeded                           |
//! | 5    | internal invariant violation                        |
//!
//! Engine-internal parallelism is controlled by `--threads` (or the
//! `LATQD_THREADS` environment variable, which wins) and never changes any
//! numeric output; `search` and `verify` documents carry no timing stanza,
//! so equal inputs produce byte-equal bytes across runs and thread counts.

pub mod args;
pub mod bench;
pub mod document;
pub mod verify;

use std::path::Path;
use std::time::Instant;

use latqd::degree::{trig_degree, trig_degree_dp};
use latqd::engines::{
    brute_force, charsum, default_tolerance, fft_enumerator, residue_dp, round_coeffs,
};
use latqd::search::{SearchSpec, Strategy};
use latqd::{BoxRadius, DualVector, LatticeRule};

use args::{
    Cli, Command, DegreeArgs, EngineArg, EnumerateArgs, FormatArg, MethodArg, RuleArgs, SearchArgs,
    StrategyArg, VerifyArgs, VerifyFormatArg,
};
use document::{
    to_csv, to_json, BestStanza, DegreeStanza, ResultDocument, RuleStanza, RunnerUpStanza,
    SearchStanza, TimingStanza, WitnessStanza,
};

/// Rendered output plus the exit code it should carry.
struct Rendered {
    text: String,
    code: i32,
}

#[derive(Debug)]
enum Failure {
    /// Bad flags or unusable parameter combinations: exit 2.
    Usage(String),
    /// The library refused or failed: exit per error class.
    Engine(latqd::Error),
}

/// Runs one parsed invocation to completion and returns the process exit
/// code. Split from `main` so tests can drive the full pipeline in-process.
pub fn run(cli: Cli) -> i32 {
    if let Err(message) = init_threads(cli.threads) {
        eprintln!("latqd: {message}");
        return 2;
    }
    let outcome = match &cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Degree(args) => cmd_degree(args),
        Command::Search(args) => cmd_search(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(rendered) => {
            if let Err(error) = emit(&rendered.text, cli.out.as_deref()) {
                eprintln!("latqd: {error}");
                return 2;
            }
            rendered.code
        }
        Err(Failure::Usage(message)) => {
            eprintln!("latqd: {message}");
            2
        }
        Err(Failure::Engine(error)) => {
            eprintln!("latqd: {error}");
            engine_exit_code(&error)
        }
    }
}

/// Maps library errors onto the documented exit codes. Everything that
/// amounts to "the arguments describe an invalid or unusable problem"
/// lands on 2 alongside flag-parse errors.
fn engine_exit_code(error: &latqd::Error) -> i32 {
    match error {
        latqd::Error::ResidualTooLarge { .. } => 3,
        latqd::Error::BudgetExceeded { .. } => 4,
        latqd::Error::InvariantViolation { .. } => 5,
        _ => 2,
    }
}

/// Applies `--threads` / `LATQD_THREADS` (the environment wins) to the
/// global worker pool. 0 means "all cores", mirroring rayon.
fn init_threads(flag: Option<usize>) -> Result<(), String> {
    let requested =
        match std::env::var("LATQD_THREADS") {
            Ok(raw) => Some(raw.parse::<usize>().map_err(|_| {
                format!("LATQD_THREADS must be a non-negative integer, got `{raw}`")
            })?),
            Err(std::env::VarError::NotPresent) => flag,
            Err(error) => return Err(format!("LATQD_THREADS: {error}")),
        };
    if let Some(threads) = requested {
        // A second initialization (possible when tests call `run` twice in
        // one process) keeps the existing pool; that is the right behavior.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()?;
    if let Some(path) = out {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn render(doc: &ResultDocument, format: FormatArg) -> Rendered {
    let text = match format {
        FormatArg::Json => to_json(doc),
        FormatArg::Csv => to_csv(doc),
    };
    Rendered { text, code: 0 }
}

/// Resolves `--g` or the `--korobov-a`/`--s` sugar into a validated rule.
fn build_rule(args: &RuleArgs) -> Result<LatticeRule, Failure> {
    let g: Vec<i64> = match (&args.g, args.korobov_a) {
        (Some(list), None) => list.0.clone(),
        (None, Some(a)) => korobov_vector(args.n, a, args.s.expect("clap ties --s to --korobov-a"))
            .map_err(Failure::Engine)?,
        _ => unreachable!("clap enforces exactly one of --g / --korobov-a"),
    };
    LatticeRule::new(args.n, &g).map_err(Failure::Engine)
}

/// `(1, a, a², …, a^(s-1)) mod n`. Entries that collapse to 0 are left in
/// place for rule validation to reject with a precise error.
fn korobov_vector(n: i64, a: i64, s: usize) -> latqd::Result<Vec<i64>> {
    if n < 2 {
        return Err(latqd::Error::ModulusTooSmall { n });
    }
    if s == 0 {
        return Err(latqd::Error::EmptyGenerator);
    }
    let modulus = n as u64;
    let base = a.rem_euclid(n) as u64;
    let mut out = Vec::with_capacity(s);
    let mut power = 1u64;
    for _ in 0..s {
        out.push(power as i64);
        power = latqd::rule::mul_mod(power, base, modulus);
    }
    Ok(out)
}

fn rule_stanza(rule: &LatticeRule) -> RuleStanza {
    RuleStanza {
        n: rule.modulus(),
        s: rule.dimension(),
        g: rule.generator().to_vec(),
    }
}

fn witness_stanza(witness: &DualVector) -> WitnessStanza {
    WitnessStanza {
        k: witness.components().to_vec(),
        norm: witness.norm(),
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<Rendered, Failure> {
    let rule = build_rule(&args.rule)?;
    let d = BoxRadius::new(args.d).map_err(Failure::Engine)?;
    if let Some(tol) = args.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure::Usage(format!(
                "--tol must be positive and finite, got {tol}"
            )));
        }
    }

    let started = Instant::now();
    let (coefficients, residual, tolerance) = match args.engine {
        EngineArg::Brute => {
            let w = brute_force(&rule, d).map_err(Failure::Engine)?;
            (w.coefficients().to_vec(), None, None)
        }
        EngineArg::Dp => {
            let w = residue_dp(&rule, d).map_err(Failure::Engine)?;
            (w.coefficients().to_vec(), None, None)
        }
        EngineArg::Charsum | EngineArg::Fft => {
            let float = if args.engine == EngineArg::Charsum {
                charsum(&rule, d)
            } else {
                fft_enumerator(&rule, d)
            };
            let tol = args.tol.unwrap_or_else(|| default_tolerance(&rule, d));
            let rounded = round_coeffs(&float, tol).map_err(Failure::Engine)?;
            (
                rounded.enumerator.coefficients().to_vec(),
                Some(rounded.residual),
                Some(tol),
            )
        }
    };
    let wall_ns = started.elapsed().as_nanos() as u64;

    let mut doc = ResultDocument::base();
    doc.rule = Some(rule_stanza(&rule));
    doc.d = Some(args.d);
    doc.engine = Some(args.engine.name().into());
    doc.coefficients = Some(coefficients);
    doc.residual = residual;
    doc.tolerance = tolerance;
    doc.timing = Some(TimingStanza {
        wall_ns,
        engine: args.engine.name().into(),
    });
    Ok(render(&doc, args.format))
}

fn cmd_degree(args: &DegreeArgs) -> Result<Rendered, Failure> {
    let rule = build_rule(&args.rule)?;

    let started = Instant::now();
    let (degree, dmax) = match args.method {
        MethodArg::Dp => match args.dmax {
            None => (trig_degree(&rule).map_err(Failure::Engine)?, rule.modulus()),
            Some(dmax) => {
                let d = BoxRadius::new(dmax).map_err(Failure::Engine)?;
                (
                    trig_degree_dp(&rule, d).map_err(Failure::Engine)?,
                    u64::from(dmax),
                )
            }
        },
        MethodArg::Enumerator => {
            let dmax = args
                .dmax
                .unwrap_or_else(|| u32::try_from(rule.modulus()).unwrap_or(u32::MAX));
            let d = BoxRadius::new(dmax).map_err(Failure::Engine)?;
            let w = residue_dp(&rule, d).map_err(Failure::Engine)?;
            (w.trig_degree(), u64::from(dmax))
        }
    };
    let wall_ns = started.elapsed().as_nanos() as u64;

    let mut doc = ResultDocument::base();
    doc.rule = Some(rule_stanza(&rule));
    doc.engine = Some(args.method.name().into());
    doc.degree = Some(DegreeStanza {
        rho: degree.rho,
        exact: degree.exact,
        dmax,
        witness: degree.witness.as_ref().map(witness_stanza),
    });
    doc.timing = Some(TimingStanza {
        wall_ns,
        engine: args.method.name().into(),
    });
    Ok(render(&doc, args.format))
}

fn cmd_search(args: &SearchArgs) -> Result<Rendered, Failure> {
    let strategy = match args.strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::Korobov => Strategy::Korobov,
        StrategyArg::Random => Strategy::Random {
            trials: args.trials.expect("clap requires --trials for random"),
            seed: args.seed.expect("clap requires --seed for random"),
        },
    };
    if args.strategy != StrategyArg::Random && (args.trials.is_some() || args.seed.is_some()) {
        return Err(Failure::Usage(
            "--trials and --seed apply only to --strategy random".into(),
        ));
    }

    let spec = SearchSpec {
        modulus: args.n,
        dimension: args.s,
        strategy,
    };
    let result = latqd::search::run(&spec).map_err(Failure::Engine)?;

    let mut doc = ResultDocument::base();
    doc.search = Some(SearchStanza {
        n: result.best.modulus(),
        s: result.best.dimension(),
        strategy: args.strategy.name().into(),
        trials: args.trials,
        seed: args.seed,
        best: BestStanza {
            g: result.best.generator().to_vec(),
            rho: result.degree.rho,
            exact: result.degree.exact,
            witness: result.degree.witness.as_ref().map(witness_stanza),
            minimal_dual_count: result.minimal_dual_count,
        },
        runner_ups: result
            .runner_ups
            .iter()
            .map(|r| RunnerUpStanza {
                g: r.generator.clone(),
                rho: r.rho,
                minimal_dual_count: r.minimal_dual_count,
            })
            .collect(),
        visited: result.visited,
    });
    // No timing stanza: search documents are byte-reproducible.
    Ok(render(&doc, args.format))
}

fn cmd_verify(args: &VerifyArgs) -> Result<Rendered, Failure> {
    let params = verify::VerifyParams {
        cases: args.cases,
        seed: args.seed,
        max_n: args.max_n,
        max_s: args.max_s,
        max_d: args.max_d,
        inject_fault: args.inject_fault,
    };
    let report = verify::run_verify(&params).map_err(Failure::Usage)?;
    let code = i32::from(!report.pass);
    let text = match args.format {
        VerifyFormatArg::Text => report.text,
        VerifyFormatArg::Json => {
            let mut doc = ResultDocument::base();
            doc.verify = Some(report.stanza);
            to_json(&doc)
        }
    };
    Ok(Rendered { text, code })
}

fn cmd_bench(args: &args::BenchArgs) -> Result<Rendered, Failure> {
    let stanza = bench::run_bench(&bench::BenchParams {
        sweep: args.sweep,
        engine: args.engine,
        repeats: args.repeats,
    })
    .map_err(Failure::Usage)?;
    let mut doc = ResultDocument::base();
    doc.bench = Some(stanza);
    Ok(render(&doc, args.format))
}
