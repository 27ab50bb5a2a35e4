//! Generating-vector search: exhaustive, Korobov, and seeded random.
//!
//! All three strategies rank candidates the same way — maximize the degree,
//! break ties by the smaller count of minimal-norm duals `M(rho+1)`, then
//! by lexicographically smaller generating vector — and differ only in
//! which vectors they look at. Candidates are screened with a degree run
//! capped at the incumbent's `rho + 1`: a candidate that cannot reach the
//! incumbent is dismissed by that cheap bounded run alone, one that beats
//! it is re-solved exactly with a widening box.

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::degree::trig_degree_dp;
use crate::engines::residue::residue_dp;
use crate::enumerator::TrigDegree;
use crate::error::{Error, Result};
use crate::rule::{mul_mod, BoxRadius, LatticeRule};

/// Upper bound on the naive candidate-space size a search may take on.
pub const SEARCH_CANDIDATE_BUDGET: u128 = 10_000_000;

/// How many runner-up rules a search reports.
pub const RUNNER_UPS_REPORTED: usize = 8;

// The runner-up pool is compacted whenever it outgrows the cap. Keeping
// more than the reported count is deliberate slack: an entry's rank can
// only degrade as competitors arrive, so the eventual top 8 are always
// inside the kept prefix.
const RUNNER_POOL_CAP: usize = 64;
const RUNNER_POOL_KEEP: usize = 16;

/// Candidate-selection strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Every vector in `{1, …, N-1}^s`, lexicographic order.
    Exhaustive,
    /// Vectors `(1, a, a^2, …) mod N` for `a = 1, …, N-1`, skipping any
    /// `a` whose powers hit 0 mod N.
    Korobov,
    /// `trials` distinct vectors drawn uniformly with a seeded generator;
    /// duplicates are redrawn and do not count.
    Random { trials: u64, seed: u64 },
}

/// A complete, reproducible description of one search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub modulus: i64,
    pub dimension: usize,
    pub strategy: Strategy,
}

/// A fully evaluated also-ran: kept so that near-ties remain visible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedRule {
    pub generator: Vec<u64>,
    pub rho: u64,
    /// `M(rho+1)`: how many duals realize the minimal norm.
    pub minimal_dual_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best: LatticeRule,
    /// Exact degree of the winner, witness included.
    pub degree: TrigDegree,
    /// `M(rho+1)` of the winner, the first tie-break key.
    pub minimal_dual_count: u64,
    /// Up to [`RUNNER_UPS_REPORTED`] fully evaluated non-winners, best
    /// first. Candidates the screening probe rejected early are not scored
    /// and so never appear here; the set is deterministic for a given
    /// strategy (and seed) but may differ between strategies that visit
    /// the space in different orders.
    pub runner_ups: Vec<RankedRule>,
    /// Number of candidates evaluated (screening included).
    pub visited: u64,
}

/// Runs the strategy named by the spec. Identical specs give identical
/// results, bit for bit.
pub fn run(spec: &SearchSpec) -> Result<SearchResult> {
    match spec.strategy {
        Strategy::Exhaustive => exhaustive_search(spec.modulus, spec.dimension),
        Strategy::Korobov => korobov_search(spec.modulus, spec.dimension),
        Strategy::Random { trials, seed } => {
            random_search(spec.modulus, spec.dimension, trials, seed)
        }
    }
}

fn validate(modulus: i64, dimension: usize) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::ModulusTooSmall { n: modulus });
    }
    if dimension == 0 {
        return Err(Error::EmptyGenerator);
    }
    Ok(modulus as u64)
}

fn naive_space(n: u64, dimension: usize) -> u128 {
    let base = (n - 1) as u128;
    let mut space: u128 = 1;
    for _ in 0..dimension {
        space = space.saturating_mul(base);
    }
    space
}

/// Scans all `(N-1)^s` generating vectors in lexicographic order.
pub fn exhaustive_search(modulus: i64, dimension: usize) -> Result<SearchResult> {
    let n = validate(modulus, dimension)?;
    let space = naive_space(n, dimension);
    if space > SEARCH_CANDIDATE_BUDGET {
        return Err(Error::BudgetExceeded {
            required: space,
            budget: SEARCH_CANDIDATE_BUDGET,
        });
    }
    let mut board = Scoreboard::new(n);
    let mut candidate = vec![1u64; dimension];
    let mut visited = 0u64;
    loop {
        board.offer(candidate.clone())?;
        visited += 1;
        // Odometer increment, last coordinate fastest.
        let mut pos = dimension;
        loop {
            if pos == 0 {
                return board.finish(visited);
            }
            pos -= 1;
            candidate[pos] += 1;
            if candidate[pos] < n {
                break;
            }
            candidate[pos] = 1;
        }
    }
}

/// Scans the Korobov family `(1, a, a^2, …) mod N` over `a = 1, …, N-1`.
pub fn korobov_search(modulus: i64, dimension: usize) -> Result<SearchResult> {
    let n = validate(modulus, dimension)?;
    let space = (n - 1) as u128;
    if space > SEARCH_CANDIDATE_BUDGET {
        return Err(Error::BudgetExceeded {
            required: space,
            budget: SEARCH_CANDIDATE_BUDGET,
        });
    }
    let mut board = Scoreboard::new(n);
    let mut visited = 0u64;
    for a in 1..n {
        let mut candidate = Vec::with_capacity(dimension);
        let mut power = 1u64;
        candidate.push(power);
        for _ in 1..dimension {
            power = mul_mod(power, a, n);
            if power == 0 {
                break;
            }
            candidate.push(power);
        }
        if candidate.len() < dimension {
            continue; // a power of `a` vanished mod N: not a valid vector
        }
        board.offer(candidate)?;
        visited += 1;
    }
    board.finish(visited)
}

/// Evaluates `trials` distinct uniformly drawn vectors. The stream is fully
/// determined by `seed`; drawing stops early once the whole space has been
/// seen, so `trials >= (N-1)^s` degenerates into an exhaustive scan.
pub fn random_search(
    modulus: i64,
    dimension: usize,
    trials: u64,
    seed: u64,
) -> Result<SearchResult> {
    let n = validate(modulus, dimension)?;
    if trials == 0 {
        return Err(Error::TrialsZero);
    }
    let space = naive_space(n, dimension);
    let required = u128::from(trials).min(space);
    if required > SEARCH_CANDIDATE_BUDGET {
        return Err(Error::BudgetExceeded {
            required,
            budget: SEARCH_CANDIDATE_BUDGET,
        });
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut board = Scoreboard::new(n);
    let mut evaluated = 0u64;
    while evaluated < trials && (seen.len() as u128) < space {
        let candidate: Vec<u64> = (0..dimension).map(|_| rng.random_range(1..n)).collect();
        if !seen.insert(candidate.clone()) {
            continue;
        }
        board.offer(candidate)?;
        evaluated += 1;
    }
    board.finish(evaluated)
}

/// A fully evaluated candidate.
struct Scored {
    rule: LatticeRule,
    degree: TrigDegree,
    minimal_dual_count: u64,
}

impl Scored {
    /// Total order used everywhere: larger degree first, then fewer
    /// minimal-norm duals, then lexicographically smaller vector.
    fn rank_order(a: &Scored, b: &Scored) -> Ordering {
        b.degree
            .rho
            .cmp(&a.degree.rho)
            .then(a.minimal_dual_count.cmp(&b.minimal_dual_count))
            .then(a.rule.generator().cmp(b.rule.generator()))
    }

    fn beats(&self, other: &Scored) -> bool {
        Scored::rank_order(self, other) == Ordering::Less
    }
}

/// Incumbent plus a bounded pool of evaluated also-rans.
struct Scoreboard {
    modulus: u64,
    best: Option<Scored>,
    pool: Vec<Scored>,
}

impl Scoreboard {
    fn new(modulus: u64) -> Self {
        Scoreboard {
            modulus,
            best: None,
            pool: Vec::new(),
        }
    }

    fn offer(&mut self, generator: Vec<u64>) -> Result<()> {
        let rule = LatticeRule::from_parts(self.modulus, generator);
        let scored = match &self.best {
            None => {
                let degree = exact_degree(&rule, 2)?;
                let minimal_dual_count = minimal_dual_count(&rule, degree.rho)?;
                Scored {
                    rule,
                    degree,
                    minimal_dual_count,
                }
            }
            Some(best) => {
                let best_rho = best.degree.rho;
                // Screening run: a box of radius best_rho + 1 either proves
                // the candidate no better than the incumbent or proves it
                // strictly better.
                let probe = trig_degree_dp(&rule, BoxRadius::new((best_rho + 1) as u32)?)?;
                if probe.exact {
                    if probe.rho < best_rho {
                        return Ok(());
                    }
                    debug_assert_eq!(probe.rho, best_rho);
                    let minimal_dual_count = minimal_dual_count(&rule, probe.rho)?;
                    Scored {
                        rule,
                        degree: probe,
                        minimal_dual_count,
                    }
                } else {
                    // No dual of norm <= best_rho + 1 at all: strictly
                    // better, solve exactly from just past the screen.
                    let degree = exact_degree(&rule, best_rho + 2)?;
                    let minimal_dual_count = minimal_dual_count(&rule, degree.rho)?;
                    Scored {
                        rule,
                        degree,
                        minimal_dual_count,
                    }
                }
            }
        };
        self.place(scored);
        Ok(())
    }

    fn place(&mut self, scored: Scored) {
        match &self.best {
            None => self.best = Some(scored),
            Some(best) => {
                if scored.beats(best) {
                    let old = std::mem::replace(self.best.as_mut().unwrap(), scored);
                    self.demote(old);
                } else {
                    self.demote(scored);
                }
            }
        }
    }

    fn demote(&mut self, scored: Scored) {
        self.pool.push(scored);
        if self.pool.len() > RUNNER_POOL_CAP {
            Self::compact(&mut self.pool, RUNNER_POOL_KEEP);
        }
    }

    fn compact(pool: &mut Vec<Scored>, keep: usize) {
        pool.sort_by(Scored::rank_order);
        pool.dedup_by(|a, b| a.rule.generator() == b.rule.generator());
        pool.truncate(keep);
    }

    fn finish(mut self, visited: u64) -> Result<SearchResult> {
        let best = self.best.ok_or(Error::NoValidCandidate)?;
        // Strategies that revisit a vector (Korobov with s = 1) can leave
        // copies of the winner in the pool.
        self.pool
            .retain(|s| s.rule.generator() != best.rule.generator());
        Self::compact(&mut self.pool, RUNNER_UPS_REPORTED);
        let runner_ups = self
            .pool
            .into_iter()
            .map(|s| RankedRule {
                generator: s.rule.generator().to_vec(),
                rho: s.degree.rho,
                minimal_dual_count: s.minimal_dual_count,
            })
            .collect();
        Ok(SearchResult {
            best: best.rule,
            degree: best.degree,
            minimal_dual_count: best.minimal_dual_count,
            runner_ups,
            visited,
        })
    }
}

/// Exact degree by box escalation: run the bounded DP from `at_least`,
/// doubling the radius until the minimum is certified. `d_max = N` always
/// certifies, so this terminates (or hits the op budget first).
fn exact_degree(rule: &LatticeRule, at_least: u64) -> Result<TrigDegree> {
    let n = rule.modulus();
    let mut d_max = at_least.clamp(1, n);
    loop {
        let degree = trig_degree_dp(rule, BoxRadius::new(d_max as u32)?)?;
        if degree.exact {
            return Ok(degree);
        }
        debug_assert!(d_max < n, "a box of radius N always certifies");
        d_max = (d_max * 2).min(n);
    }
}

/// `M(rho+1)` computed at exactly the box that contains the minimal duals.
fn minimal_dual_count(rule: &LatticeRule, rho: u64) -> Result<u64> {
    let d = BoxRadius::new((rho + 1) as u32)?;
    let w = residue_dp(rule, d)?;
    Ok(w.coefficients()[(rho + 1) as usize])
}
