//! Group degree, closeness and betweenness centrality of a vertex set.
//!
//! Degree and closeness are exact rationals. Betweenness sums per-pair
//! ratios of exact path counts in floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::traversal::{bfs_layers, count_paths, multi_source_unchecked};
use crate::graph::{shortest_path_counts, Graph, Sigma, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
    RandomWalk,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Degree,
        Measure::Closeness,
        Measure::Betweenness,
        Measure::RandomWalk,
    ];

    pub fn direction(self) -> Direction {
        match self {
            Measure::Degree | Measure::Betweenness => Direction::Maximize,
            Measure::Closeness | Measure::RandomWalk => Direction::Minimize,
        }
    }

    /// Whether scores of this measure carry an exact rational value.
    pub fn is_exact(self) -> bool {
        matches!(self, Measure::Degree | Measure::Closeness)
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::RandomWalk => "randomwalk",
        }
    }

    /// Column heading used in report tables.
    pub fn heading(self) -> &'static str {
        match self {
            Measure::RandomWalk => "random-walk",
            m => m.name(),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "degree" => Ok(Measure::Degree),
            "closeness" => Ok(Measure::Closeness),
            "betweenness" => Ok(Measure::Betweenness),
            "randomwalk" | "random-walk" | "rw" => Ok(Measure::RandomWalk),
            other => Err(Error::InvalidArgument(format!("unknown measure {other:?}"))),
        }
    }
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A centrality value, with its exact rational form when one is available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub value: f64,
    pub exact: Option<Ratio<u64>>,
}

impl Score {
    pub fn exact(r: Ratio<u64>) -> Score {
        Score {
            value: r.to_f64().unwrap_or(f64::NAN),
            exact: Some(r),
        }
    }

    pub fn real(value: f64) -> Score {
        Score { value, exact: None }
    }

    /// `p/q (d.dddddd)` for exact scores, `d.dddddd` otherwise.
    pub fn render(&self) -> String {
        match self.exact {
            Some(r) if *r.denom() == 1 => format!("{} ({:.6})", r.numer(), self.value),
            Some(r) => format!("{}/{} ({:.6})", r.numer(), r.denom(), self.value),
            None => format!("{:.6}", self.value),
        }
    }

    pub fn exact_string(&self) -> Option<String> {
        self.exact.map(|r| format!("{}/{}", r.numer(), r.denom()))
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Score", 2)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("exact", &self.exact_string())?;
        st.end()
    }
}

fn check_set(g: &Graph, s: &VertexSet) -> Result<()> {
    s.ensure_proper(g)?;
    g.ensure_connected()
}

/// Fraction of vertices outside `s` with at least one neighbor in `s`.
pub fn group_degree(g: &Graph, s: &VertexSet) -> Result<Score> {
    check_set(g, s)?;
    Ok(degree_unchecked(g, s))
}

pub(crate) fn degree_unchecked(g: &Graph, s: &VertexSet) -> Score {
    let hit = s
        .complement()
        .filter(|&v| g.neighbors(v).any(|w| s.contains(w)))
        .count();
    Score::exact(Ratio::new(hit as u64, s.complement_len() as u64))
}

/// Mean hop distance from the vertices outside `s` to `s`.
pub fn group_closeness(g: &Graph, s: &VertexSet) -> Result<Score> {
    check_set(g, s)?;
    Ok(closeness_unchecked(g, s))
}

pub(crate) fn closeness_unchecked(g: &Graph, s: &VertexSet) -> Score {
    let dist = multi_source_unchecked(g, s.members());
    let total: usize = s.complement().map(|v| dist[v]).sum();
    Score::exact(Ratio::new(total as u64, s.complement_len() as u64))
}

/// Shortest-path distances and counts between all pairs of the full graph,
/// reused across many betweenness evaluations on the same graph.
#[derive(Debug, Clone)]
pub struct BetweennessContext {
    dist: Vec<Vec<Option<usize>>>,
    sigma: Vec<Sigma>,
}

impl BetweennessContext {
    pub fn new(g: &Graph) -> Result<BetweennessContext> {
        g.ensure_connected()?;
        let mut dist = Vec::with_capacity(g.n());
        let mut sigma = Vec::with_capacity(g.n());
        for u in 0..g.n() {
            let pc = shortest_path_counts(g, u)?;
            dist.push(pc.dist);
            sigma.push(pc.sigma);
        }
        Ok(BetweennessContext { dist, sigma })
    }

    /// Group betweenness of `s`. `g` must be the graph the context was built on.
    pub fn score(&self, g: &Graph, s: &VertexSet) -> Result<Score> {
        s.ensure_proper(g)?;
        let outside = s.complement_len();
        if outside < 2 {
            return Err(Error::ComplementTooSmall(outside));
        }
        let allowed: Vec<bool> = s.mask().iter().map(|&m| !m).collect();
        let mut sum = 0.0;
        for u in s.complement() {
            let (rdist, order) = bfs_layers(g, u, &allowed);
            let reduced = restricted_counts(g, u, &rdist, &order, &allowed)?;
            for v in s.complement().filter(|&v| v > u) {
                sum += self.through_fraction(u, v, &rdist, &reduced);
            }
        }
        let pairs = (outside * (outside - 1)) as f64;
        Ok(Score::real(2.0 * sum / pairs))
    }

    /// Fraction of the u-v geodesics of the full graph that touch the removed set,
    /// given distances and path counts from `u` in the reduced graph.
    fn through_fraction(
        &self,
        u: usize,
        v: usize,
        rdist: &[Option<usize>],
        reduced: &Sigma,
    ) -> f64 {
        let d = self.dist[u][v];
        if rdist[v] != d {
            return 1.0;
        }
        match (&self.sigma[u], reduced) {
            (Sigma::Word(t), Sigma::Word(r)) => (t[v] - r[v]) as f64 / t[v] as f64,
            (total, reduced) => {
                let t = total.get(v);
                let r = reduced.get(v);
                ((&t - &r).to_f64().unwrap_or(f64::NAN)) / t.to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// Exact (through, total) geodesic counts for one pair.
    pub fn split(&self, g: &Graph, u: usize, v: usize, s: &VertexSet) -> (BigUint, BigUint) {
        let allowed: Vec<bool> = s.mask().iter().map(|&m| !m).collect();
        let (rdist, order) = bfs_layers(g, u, &allowed);
        let total = self.sigma[u].get(v);
        if rdist[v] != self.dist[u][v] {
            return (total.clone(), total);
        }
        let reduced = restricted_counts(g, u, &rdist, &order, &allowed)
            .map(|r| r.get(v))
            .unwrap_or_default();
        (&total - &reduced, total)
    }
}

fn restricted_counts(
    g: &Graph,
    source: usize,
    dist: &[Option<usize>],
    order: &[usize],
    allowed: &[bool],
) -> Result<Sigma> {
    if let Some(s) = count_paths::<u64>(g, source, dist, order, allowed) {
        return Ok(Sigma::Word(s));
    }
    count_paths::<BigUint>(g, source, dist, order, allowed)
        .map(Sigma::Big)
        .ok_or(Error::CountOverflow)
}

/// Normalized share of geodesics between pairs outside `s` that pass through `s`.
pub fn group_betweenness(g: &Graph, s: &VertexSet) -> Result<Score> {
    check_set(g, s)?;
    BetweennessContext::new(g)?.score(g, s)
}

/// Number of shortest u-v paths that pass through `s`, and the total number
/// of shortest u-v paths.
pub fn sigma_through_set(
    g: &Graph,
    u: usize,
    v: usize,
    s: &VertexSet,
) -> Result<(BigUint, BigUint)> {
    check_set(g, s)?;
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
        if s.contains(x) {
            return Err(Error::EndpointInSet(x));
        }
    }
    if u == v {
        return Err(Error::InvalidArgument("endpoints must be distinct".into()));
    }
    let pc = shortest_path_counts(g, u)?;
    let total = pc.sigma.get(v);
    let allowed: Vec<bool> = s.mask().iter().map(|&m| !m).collect();
    let (rdist, order) = bfs_layers(g, u, &allowed);
    if rdist[v] != pc.dist[v] {
        return Ok((total.clone(), total));
    }
    let reduced = restricted_counts(g, u, &rdist, &order, &allowed)?.get(v);
    Ok((&total - &reduced, total))
}
