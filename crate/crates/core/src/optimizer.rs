//! Exhaustive search for optimal size-k vertex sets.
//!
//! Subsets are enumerated in colexicographic order. The space is split into
//! one task per largest element, tasks run on a worker pool, and per-task
//! optima are merged in task order, so results do not depend on the number
//! of workers. Every set whose score ties the optimum is reported.
//!
//! Ties are exact for degree and closeness (rational scores). Betweenness and
//! random-walk scores tie when they differ by at most
//! `tolerance * max(1, |a|, |b|)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::measures::{
    closeness_unchecked, degree_unchecked, BetweennessContext, Direction, Measure, Score,
};
use crate::random_walk::randomwalk_unchecked;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Largest number of subsets one search may enumerate.
    pub budget: u64,
    pub workers: usize,
    /// Relative tie tolerance for floating-point measures.
    pub tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            budget: DEFAULT_BUDGET,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl OptimizerConfig {
    pub fn with_workers(workers: usize) -> OptimizerConfig {
        OptimizerConfig {
            workers,
            ..OptimizerConfig::default()
        }
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Scores sets of one measure on one graph, reusing per-graph precomputation.
pub struct Evaluator<'g> {
    graph: &'g Graph,
    measure: Measure,
    betweenness: Option<BetweennessContext>,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g Graph, measure: Measure) -> Result<Evaluator<'g>> {
        graph.ensure_connected()?;
        let betweenness = match measure {
            Measure::Betweenness => Some(BetweennessContext::new(graph)?),
            _ => None,
        };
        Ok(Evaluator {
            graph,
            measure,
            betweenness,
        })
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn score(&self, s: &VertexSet) -> Result<Score> {
        s.ensure_proper(self.graph)?;
        match self.measure {
            Measure::Degree => Ok(degree_unchecked(self.graph, s)),
            Measure::Closeness => Ok(closeness_unchecked(self.graph, s)),
            Measure::Betweenness => self
                .betweenness
                .as_ref()
                .expect("context built for betweenness")
                .score(self.graph, s),
            Measure::RandomWalk => {
                if self.graph.n() < 2 {
                    return Err(Error::InvalidArgument("graph too small".into()));
                }
                randomwalk_unchecked(self.graph, s)
            }
        }
    }
}

/// Scores one set under one measure.
pub fn evaluate(g: &Graph, s: &VertexSet, measure: Measure) -> Result<Score> {
    Evaluator::new(g, measure)?.score(s)
}

/// Raw numeric order of two scores (exact when both carry rationals).
fn raw_cmp(a: &Score, b: &Score) -> Ordering {
    match (a.exact, b.exact) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => a.value.total_cmp(&b.value),
    }
}

/// Whether `a` and `b` count as equal under the tie regime of `measure`.
pub fn scores_tie(measure: Measure, a: &Score, b: &Score, tolerance: f64) -> bool {
    if measure.is_exact() {
        if let (Some(x), Some(y)) = (a.exact, b.exact) {
            return x == y;
        }
    }
    let scale = 1f64.max(a.value.abs()).max(b.value.abs());
    (a.value - b.value).abs() <= tolerance * scale
}

/// `a` is numerically more extreme than `b` in the optimization direction.
fn more_extreme(measure: Measure, a: &Score, b: &Score) -> bool {
    match measure.direction() {
        Direction::Maximize => raw_cmp(a, b) == Ordering::Greater,
        Direction::Minimize => raw_cmp(a, b) == Ordering::Less,
    }
}

/// Running optimum: the most extreme score seen and every set tying it.
#[derive(Debug, Clone)]
struct Optimum {
    measure: Measure,
    tolerance: f64,
    best: Option<Score>,
    sets: Vec<(Score, VertexSet)>,
    evaluated: u64,
}

impl Optimum {
    fn new(measure: Measure, tolerance: f64) -> Optimum {
        Optimum {
            measure,
            tolerance,
            best: None,
            sets: Vec::new(),
            evaluated: 0,
        }
    }

    fn offer(&mut self, score: Score, set: VertexSet) {
        let (m, tol) = (self.measure, self.tolerance);
        match self.best {
            None => {
                self.best = Some(score);
                self.sets.push((score, set));
            }
            Some(best) => {
                if more_extreme(m, &score, &best) {
                    self.best = Some(score);
                    self.sets.retain(|(s, _)| scores_tie(m, s, &score, tol));
                    self.sets.push((score, set));
                } else if scores_tie(m, &score, &best, tol) {
                    self.sets.push((score, set));
                }
            }
        }
    }

    fn merge(&mut self, other: Optimum) {
        self.evaluated += other.evaluated;
        for (score, set) in other.sets {
            self.offer(score, set);
        }
    }
}

/// Colexicographic enumeration of the `r`-subsets of `0..limit`.
#[derive(Debug, Clone)]
pub struct Colex {
    limit: usize,
    current: Option<Vec<usize>>,
}

impl Colex {
    pub fn new(limit: usize, r: usize) -> Colex {
        Colex {
            limit,
            current: (r <= limit).then(|| (0..r).collect()),
        }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut c = out.clone();
        let r = c.len();
        let mut i = 0;
        while i < r {
            let cap = if i + 1 < r { c[i + 1] } else { self.limit };
            if c[i] + 1 < cap {
                break;
            }
            i += 1;
        }
        if i < r {
            c[i] += 1;
            for (t, slot) in c.iter_mut().enumerate().take(i) {
                *slot = t;
            }
            self.current = Some(c);
        }
        Some(out)
    }
}

/// All `k`-subsets of `0..n` whose largest element is `top`, in colex order.
fn sets_with_top(n: usize, k: usize, top: usize) -> impl Iterator<Item = VertexSet> {
    Colex::new(top, k - 1).map(move |mut c| {
        c.push(top);
        VertexSet::from_sorted_unchecked(n, c)
    })
}

fn check_search(g: &Graph, k: usize, cfg: &OptimizerConfig) -> Result<()> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidGroupSize { k, n });
    }
    g.ensure_connected()?;
    let count = binomial(n, k);
    if count > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            n,
            k,
            count,
            budget: cfg.budget,
        });
    }
    Ok(())
}

fn run_tasks<T, F>(workers: usize, tasks: Vec<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    if workers <= 1 {
        return tasks.into_iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| tasks.into_par_iter().map(f).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumResult {
    pub measure: Measure,
    pub direction: Direction,
    pub k: usize,
    pub best_value: Score,
    /// Every optimal set, sorted lexicographically.
    pub optimal_sets: Vec<VertexSet>,
    pub evaluated: u64,
    #[serde(serialize_with = "as_millis")]
    pub wall_time: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl OptimumResult {
    /// Everything except the wall time, as a string; identical across runs
    /// and worker counts.
    pub fn fingerprint(&self) -> String {
        let sets: Vec<String> = self.optimal_sets.iter().map(|s| s.to_string()).collect();
        format!(
            "{} k={} best={:?}/{:?} evaluated={} sets=[{}]",
            self.measure,
            self.k,
            self.best_value.value.to_bits(),
            self.best_value.exact_string(),
            self.evaluated,
            sets.join(" ")
        )
    }
}

/// Finds every size-`k` set optimizing `measure` by exhaustive enumeration.
pub fn optimumset(
    g: &Graph,
    k: usize,
    measure: Measure,
    cfg: &OptimizerConfig,
) -> Result<OptimumResult> {
    check_search(g, k, cfg)?;
    let started = Instant::now();
    let n = g.n();
    let evaluator = Evaluator::new(g, measure)?;
    let tasks: Vec<usize> = (k - 1..n).collect();
    let partial = run_tasks(cfg.workers, tasks, |top| {
        let mut acc = Optimum::new(measure, cfg.tolerance);
        for set in sets_with_top(n, k, top) {
            let score = evaluator.score(&set)?;
            acc.evaluated += 1;
            acc.offer(score, set);
        }
        Ok(acc)
    })?;
    let mut total = Optimum::new(measure, cfg.tolerance);
    for p in partial {
        total.merge(p);
    }
    let best_value = total.best.expect("at least one subset was scored");
    let mut optimal_sets: Vec<VertexSet> = total.sets.into_iter().map(|(_, s)| s).collect();
    optimal_sets.sort();
    optimal_sets.dedup();
    Ok(OptimumResult {
        measure,
        direction: measure.direction(),
        k,
        best_value,
        optimal_sets,
        evaluated: total.evaluated,
        wall_time: started.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionResult {
    pub measure: Measure,
    pub k: usize,
    pub alpha: f64,
    pub witness: Option<VertexSet>,
    pub witness_score: Option<Score>,
}

/// Whether `score` equals `alpha`: to double precision for exact measures,
/// within the tie tolerance otherwise.
fn matches_alpha(measure: Measure, score: &Score, alpha: f64, tolerance: f64) -> bool {
    let scale = 1f64.max(alpha.abs()).max(score.value.abs());
    let tol = if measure.is_exact() {
        4.0 * f64::EPSILON
    } else {
        tolerance
    };
    (score.value - alpha).abs() <= tol * scale
}

/// Returns the first size-`k` set, in colex order, whose score equals `alpha`.
pub fn optimumset_decision(
    g: &Graph,
    k: usize,
    measure: Measure,
    alpha: f64,
    cfg: &OptimizerConfig,
) -> Result<DecisionResult> {
    check_search(g, k, cfg)?;
    let n = g.n();
    let evaluator = Evaluator::new(g, measure)?;
    let tasks: Vec<usize> = (k - 1..n).collect();
    let firsts = run_tasks(cfg.workers, tasks, |top| {
        for set in sets_with_top(n, k, top) {
            let score = evaluator.score(&set)?;
            if matches_alpha(measure, &score, alpha, cfg.tolerance) {
                return Ok(Some((set, score)));
            }
        }
        Ok(None)
    })?;
    let found = firsts.into_iter().flatten().next();
    Ok(DecisionResult {
        measure,
        k,
        alpha,
        witness_score: found.as_ref().map(|(_, s)| *s),
        witness: found.map(|(s, _)| s),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Overlap {
    pub k: usize,
    pub first: Measure,
    pub second: Measure,
    /// Jaccard index of the vertex unions of the two measures' optimal sets.
    pub jaccard: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossMeasureReport {
    pub k_max: usize,
    pub measures: Vec<Measure>,
    /// One entry per (k, measure), k ascending, measures in the order given.
    pub results: Vec<OptimumResult>,
    pub overlaps: Vec<Overlap>,
}

impl CrossMeasureReport {
    pub fn result(&self, k: usize, measure: Measure) -> Option<&OptimumResult> {
        self.results.iter().find(|r| r.k == k && r.measure == measure)
    }

    pub fn fingerprint(&self) -> String {
        let mut lines: Vec<String> = self.results.iter().map(|r| r.fingerprint()).collect();
        lines.extend(self.overlaps.iter().map(|o| {
            format!("k={} {}~{} {:?}", o.k, o.first, o.second, o.jaccard.to_bits())
        }));
        lines.join("\n")
    }
}

fn vertex_union(sets: &[VertexSet]) -> BTreeSet<usize> {
    sets.iter().flat_map(|s| s.members().iter().copied()).collect()
}

/// Runs [`optimumset`] for every `k` in `1..=k_max` and every measure.
/// Nothing is computed unless every size fits the budget.
pub fn cross_measure_report(
    g: &Graph,
    k_max: usize,
    measures: &[Measure],
    cfg: &OptimizerConfig,
) -> Result<CrossMeasureReport> {
    if k_max == 0 || k_max >= g.n() {
        return Err(Error::InvalidGroupSize { k: k_max, n: g.n() });
    }
    // Refuse up front, naming the largest offending size.
    for k in (1..=k_max).rev() {
        check_search(g, k, cfg)?;
    }
    let mut results = Vec::new();
    let mut overlaps = Vec::new();
    for k in 1..=k_max {
        let row: Vec<OptimumResult> = measures
            .iter()
            .map(|&m| optimumset(g, k, m, cfg))
            .collect::<Result<_>>()?;
        for (i, a) in row.iter().enumerate() {
            for b in &row[i + 1..] {
                let ua = vertex_union(&a.optimal_sets);
                let ub = vertex_union(&b.optimal_sets);
                let inter = ua.intersection(&ub).count();
                let union = ua.union(&ub).count();
                overlaps.push(Overlap {
                    k,
                    first: a.measure,
                    second: b.measure,
                    jaccard: if union == 0 { 1.0 } else { inter as f64 / union as f64 },
                });
            }
        }
        results.extend(row);
    }
    Ok(CrossMeasureReport {
        k_max,
        measures: measures.to_vec(),
        results,
        overlaps,
    })
}
