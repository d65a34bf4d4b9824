//! Weighted random walks: transition matrix, stationary distribution,
//! fundamental matrix, hitting times to vertices and to vertex sets, the group
//! random-walk score, and a Monte-Carlo estimator of hitting times.
//!
//! Hitting times to a set `S` have two analytic routes. The absorbing route
//! solves `(I - Q) h = 1` on the transition block of the vertices outside
//! `S`. The contraction route merges `S` into one vertex `v_S` (summing the
//! weights of crossing edges per outside vertex) and reads
//! `H(u, v_S) = (Z[v_S][v_S] - Z[u][v_S]) / pi(v_S)` off the fundamental matrix
//! `Z = (I - P + P_inf)^-1` of the contracted graph. Both give the same values.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::traversal::multi_source_unchecked;
use crate::graph::{Graph, VertexSet};
use crate::linalg::{inverse_refined, solve_refined};
use crate::measures::Score;

/// Name of the generator behind [`monte_carlo_hitting`], recorded in outputs.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), stream = source vertex";

fn check_walkable(g: &Graph) -> Result<()> {
    g.ensure_connected()?;
    if g.n() < 2 {
        return Err(Error::InvalidArgument(
            "random walks need at least two vertices".into(),
        ));
    }
    Ok(())
}

/// Row-stochastic `p[u][v] = w(uv) / w(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    pub p: DMatrix<f64>,
}

pub fn transition_matrix(g: &Graph) -> Result<TransitionMatrix> {
    check_walkable(g)?;
    let n = g.n();
    let mut p = DMatrix::zeros(n, n);
    for u in 0..n {
        let wu = g.weighted_degree(u);
        for &(v, w) in g.adjacency(u) {
            p[(u, v)] = w / wu;
        }
    }
    Ok(TransitionMatrix { p })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryDistribution {
    pub pi: Vec<f64>,
}

/// `pi(v) = w(v) / sum_u w(u)`, from weighted degrees.
pub fn stationary(g: &Graph) -> Result<StationaryDistribution> {
    check_walkable(g)?;
    let degrees: Vec<f64> = (0..g.n()).map(|v| g.weighted_degree(v)).collect();
    let total: f64 = degrees.iter().sum();
    Ok(StationaryDistribution {
        pi: degrees.into_iter().map(|d| d / total).collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalMatrix {
    pub z: DMatrix<f64>,
    pub pi: Vec<f64>,
}

impl FundamentalMatrix {
    /// Expected steps from `i` to first reach `j`.
    pub fn hitting_time(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        (self.z[(j, j)] - self.z[(i, j)]) / self.pi[j]
    }
}

pub fn fundamental_matrix(g: &Graph) -> Result<FundamentalMatrix> {
    let tm = transition_matrix(g)?;
    let pi = stationary(g)?.pi;
    let n = g.n();
    let mut a = DMatrix::<f64>::identity(n, n) - tm.p;
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] += pi[j];
        }
    }
    let z = inverse_refined(&a)?;
    Ok(FundamentalMatrix { z, pi })
}

pub fn hitting_time_pair(g: &Graph, u: usize, v: usize) -> Result<f64> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    if u == v {
        return Ok(0.0);
    }
    Ok(fundamental_matrix(g)?.hitting_time(u, v))
}

/// All-pairs hitting times, `h[(i, j)] = H(i, j)`.
pub fn hitting_time_matrix(g: &Graph) -> Result<DMatrix<f64>> {
    let f = fundamental_matrix(g)?;
    let n = g.n();
    Ok(DMatrix::from_fn(n, n, |i, j| f.hitting_time(i, j)))
}

/// `G_S`: the vertices outside `S` (renumbered in increasing order) plus one
/// merged vertex standing for all of `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractedGraph {
    pub graph: Graph,
    /// Id of the merged vertex; always the last one.
    pub merged: usize,
    /// Original vertex to contracted vertex; members of `S` map to `merged`.
    pub mapping: Vec<usize>,
    /// Members of `S` with a neighbor outside `S`.
    pub boundary: VertexSet,
}

pub fn contract(g: &Graph, s: &VertexSet) -> Result<ContractedGraph> {
    s.ensure_proper(g)?;
    g.ensure_connected()?;
    let merged = s.complement_len();
    let mut mapping = vec![merged; g.n()];
    for (i, v) in s.complement().enumerate() {
        mapping[v] = i;
    }
    let mut to_set = vec![0.0; merged];
    let mut edges = Vec::new();
    let mut boundary = Vec::new();
    for e in g.edges() {
        match (s.contains(e.u), s.contains(e.v)) {
            (false, false) => edges.push((mapping[e.u], mapping[e.v], e.weight)),
            (true, false) => to_set[mapping[e.v]] += e.weight,
            (false, true) => to_set[mapping[e.u]] += e.weight,
            (true, true) => {}
        }
    }
    for (u, &w) in to_set.iter().enumerate() {
        if w > 0.0 {
            edges.push((u, merged, w));
        }
    }
    for &v in s.members() {
        if g.neighbors(v).any(|w| !s.contains(w)) {
            boundary.push(v);
        }
    }
    let graph = Graph::from_weighted_edges(merged + 1, edges)?;
    Ok(ContractedGraph {
        graph,
        merged,
        mapping,
        boundary: VertexSet::new(g.n(), boundary)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HittingRoute {
    #[serde(rename = "contraction-z")]
    ContractionZ,
    #[serde(rename = "absorbing-solve")]
    AbsorbingSolve,
    #[serde(rename = "monte-carlo")]
    MonteCarlo,
}

impl std::str::FromStr for HittingRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contraction" | "contraction-z" => Ok(HittingRoute::ContractionZ),
            "absorbing" | "absorbing-solve" => Ok(HittingRoute::AbsorbingSolve),
            "montecarlo" | "monte-carlo" => Ok(HittingRoute::MonteCarlo),
            other => Err(Error::InvalidArgument(format!("unknown route {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloStats {
    pub walks_per_source: u64,
    pub max_steps: u64,
    pub seed: u64,
    pub rng: &'static str,
    /// Walks that hit the step cap, per vertex (zero for members of the target).
    pub truncated: Vec<u64>,
    pub truncated_total: u64,
}

/// Expected steps from every vertex to the target set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HittingSolution {
    pub target: VertexSet,
    pub h: Vec<f64>,
    pub route: HittingRoute,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarloStats>,
}

impl HittingSolution {
    /// Mean over the vertices outside the target.
    pub fn mean_outside(&self) -> f64 {
        let outside: Vec<f64> = self.target.complement().map(|v| self.h[v]).collect();
        outside.iter().sum::<f64>() / outside.len() as f64
    }

    /// Largest violation of `h(v) = 1 + sum_u p(v,u) h(u)` over vertices
    /// outside the target.
    pub fn first_step_residual(&self, g: &Graph) -> f64 {
        self.target
            .complement()
            .map(|v| {
                let wv = g.weighted_degree(v);
                let next: f64 = g.adjacency(v).iter().map(|&(u, w)| w / wv * self.h[u]).sum();
                (self.h[v] - 1.0 - next).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Hitting times to `s` by one of the analytic routes.
pub fn hitting_time_set(g: &Graph, s: &VertexSet, route: HittingRoute) -> Result<HittingSolution> {
    s.ensure_proper(g)?;
    check_walkable(g)?;
    let h = match route {
        HittingRoute::AbsorbingSolve => absorbing_hitting_times(g, s)?,
        HittingRoute::ContractionZ => {
            let c = contract(g, s)?;
            let f = fundamental_matrix(&c.graph)?;
            (0..g.n())
                .map(|v| {
                    if s.contains(v) {
                        0.0
                    } else {
                        f.hitting_time(c.mapping[v], c.merged)
                    }
                })
                .collect()
        }
        HittingRoute::MonteCarlo => {
            return Err(Error::InvalidArgument(
                "use monte_carlo_hitting for the Monte-Carlo route".into(),
            ))
        }
    };
    Ok(HittingSolution {
        target: s.clone(),
        h,
        route,
        stderr: None,
        monte_carlo: None,
    })
}

/// Solves `(I - Q) h = 1` over the vertices outside `s`.
pub(crate) fn absorbing_hitting_times(g: &Graph, s: &VertexSet) -> Result<Vec<f64>> {
    let outside: Vec<usize> = s.complement().collect();
    let c = outside.len();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in outside.iter().enumerate() {
        index[v] = i;
    }
    let mut a = DMatrix::<f64>::identity(c, c);
    for (i, &v) in outside.iter().enumerate() {
        let wv = g.weighted_degree(v);
        for &(u, w) in g.adjacency(v) {
            if index[u] != usize::MAX {
                a[(i, index[u])] -= w / wv;
            }
        }
    }
    let x = solve_refined(&a, &DVector::from_element(c, 1.0))?;
    let mut h = vec![0.0; g.n()];
    for (i, &v) in outside.iter().enumerate() {
        h[v] = x[i];
    }
    Ok(h)
}

/// Mean hitting time to `s` over the vertices outside it. Lower is more central.
pub fn group_randomwalk(g: &Graph, s: &VertexSet) -> Result<Score> {
    s.ensure_proper(g)?;
    check_walkable(g)?;
    randomwalk_unchecked(g, s)
}

pub(crate) fn randomwalk_unchecked(g: &Graph, s: &VertexSet) -> Result<Score> {
    let h = absorbing_hitting_times(g, s)?;
    let total: f64 = s.complement().map(|v| h[v]).sum();
    Ok(Score::real(total / s.complement_len() as f64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloConfig {
    pub walks_per_source: u64,
    /// Step cap per walk; `None` means `100 * n^2`.
    pub max_steps: Option<u64>,
    pub seed: u64,
    pub workers: usize,
}

impl MonteCarloConfig {
    pub fn new(walks_per_source: u64, seed: u64) -> MonteCarloConfig {
        MonteCarloConfig {
            walks_per_source,
            max_steps: None,
            seed,
            workers: 1,
        }
    }
}

/// Largest tolerated share of truncated walks per source.
pub const MAX_TRUNCATED_FRACTION: f64 = 0.01;

struct WalkTally {
    completed: u64,
    sum: u128,
    sum_sq: u128,
    truncated: u64,
}

/// Simulates `walks_per_source` walks from every vertex outside `s` and
/// reports the sample mean and standard error of the steps to reach `s`.
///
/// Every source has its own ChaCha8 stream derived from the seed and the
/// source id, so results do not depend on the number of workers. Walks that
/// hit the step cap are excluded from the mean and counted; more than 1% of
/// them from any source is an error.
pub fn monte_carlo_hitting(
    g: &Graph,
    s: &VertexSet,
    cfg: &MonteCarloConfig,
) -> Result<HittingSolution> {
    s.ensure_proper(g)?;
    check_walkable(g)?;
    if cfg.walks_per_source == 0 {
        return Err(Error::InvalidArgument("walks_per_source must be at least 1".into()));
    }
    let n = g.n() as u64;
    let max_steps = cfg.max_steps.unwrap_or(100 * n * n);
    let unit = g.is_unit_weighted();
    let cumulative: Vec<Vec<f64>> = (0..g.n())
        .map(|u| {
            let mut acc = 0.0;
            g.adjacency(u)
                .iter()
                .map(|&(_, w)| {
                    acc += w;
                    acc
                })
                .collect()
        })
        .collect();

    let simulate = |source: usize| -> WalkTally {
        let mut tally = WalkTally {
            completed: 0,
            sum: 0,
            sum_sq: 0,
            truncated: 0,
        };
        if s.contains(source) {
            return tally;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(source as u64);
        for _ in 0..cfg.walks_per_source {
            let mut at = source;
            let mut steps: u64 = 0;
            let mut hit = false;
            while steps < max_steps {
                let nbrs = g.adjacency(at);
                let k = if unit {
                    rng.random_range(0..nbrs.len())
                } else {
                    let cum = &cumulative[at];
                    let r = rng.random::<f64>() * cum[cum.len() - 1];
                    cum.partition_point(|&c| c <= r).min(cum.len() - 1)
                };
                at = nbrs[k].0;
                steps += 1;
                if s.contains(at) {
                    hit = true;
                    break;
                }
            }
            if hit {
                tally.completed += 1;
                tally.sum += steps as u128;
                tally.sum_sq += (steps as u128) * (steps as u128);
            } else {
                tally.truncated += 1;
            }
        }
        tally
    };

    let tallies: Vec<WalkTally> = if cfg.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| (0..g.n()).into_par_iter().map(simulate).collect())
    } else {
        (0..g.n()).map(simulate).collect()
    };

    let mut h = vec![0.0; g.n()];
    let mut stderr = vec![0.0; g.n()];
    let mut truncated = vec![0; g.n()];
    for (v, t) in tallies.iter().enumerate() {
        if s.contains(v) {
            continue;
        }
        truncated[v] = t.truncated;
        if t.truncated as f64 > MAX_TRUNCATED_FRACTION * cfg.walks_per_source as f64
            || t.completed == 0
        {
            return Err(Error::TruncatedWalks {
                start: v,
                truncated: t.truncated,
                walks: cfg.walks_per_source,
                max_steps,
            });
        }
        let k = t.completed as u128;
        h[v] = t.sum as f64 / k as f64;
        if k > 1 {
            // k * sum_sq - sum^2 is exact in integers.
            let spread = k * t.sum_sq - t.sum * t.sum;
            let variance = spread as f64 / (k * (k - 1)) as f64;
            stderr[v] = (variance / k as f64).sqrt();
        }
    }
    let truncated_total = truncated.iter().sum();
    Ok(HittingSolution {
        target: s.clone(),
        h,
        route: HittingRoute::MonteCarlo,
        stderr: Some(stderr),
        monte_carlo: Some(MonteCarloStats {
            walks_per_source: cfg.walks_per_source,
            max_steps,
            seed: cfg.seed,
            rng: RNG_ALGORITHM,
            truncated,
            truncated_total,
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    /// Group random-walk score of the set on the unit-weight walk.
    pub lhs: f64,
    /// `(1/|V\S|) * (sum of d(u,S) over u outside S) * (sum of degrees outside S)`.
    pub mid: f64,
    /// `|V\S|^3`, the cubic envelope without its (unspecified) constant.
    pub cubic: f64,
    pub holds: bool,
}

/// Checks the distance-degree upper bound on the group random-walk score.
/// The bound concerns simple random walks, so weights are ignored.
pub fn check_upper_bound(g: &Graph, s: &VertexSet) -> Result<BoundCheck> {
    let unit = g.unweighted();
    let lhs = group_randomwalk(&unit, s)?.value;
    let dist = multi_source_unchecked(&unit, s.members());
    let outside = s.complement_len() as f64;
    let dist_sum: usize = s.complement().map(|v| dist[v]).sum();
    let degree_sum: usize = s.complement().map(|v| unit.degree(v)).sum();
    let mid = dist_sum as f64 * degree_sum as f64 / outside;
    Ok(BoundCheck {
        lhs,
        mid,
        cubic: outside.powi(3),
        holds: lhs <= mid + 1e-9,
    })
}
