//! Breadth-first primitives: hop distances and shortest-path counts.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Hop distance from every vertex to the nearest member of `source`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceField {
    pub source: VertexSet,
    pub dist: Vec<usize>,
}

/// Hop distances from one vertex; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// BFS seeded with every member of `s` at distance zero.
pub fn multi_source_distances(g: &Graph, s: &VertexSet) -> Result<DistanceField> {
    if s.universe() != g.n() {
        return Err(Error::InvalidArgument("vertex set does not match graph".into()));
    }
    g.ensure_connected()?;
    let dist = multi_source_unchecked(g, s.members());
    Ok(DistanceField {
        source: s.clone(),
        dist,
    })
}

pub(crate) fn multi_source_unchecked(g: &Graph, sources: &[usize]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Per-vertex shortest-path counts. Machine words are used until a count
/// would overflow, then the whole vector is recomputed with big integers.
#[derive(Debug, Clone, PartialEq)]
pub enum Sigma {
    Word(Vec<u64>),
    Big(Vec<BigUint>),
}

impl Sigma {
    pub fn get(&self, v: usize) -> BigUint {
        match self {
            Sigma::Word(s) => BigUint::from(s[v]),
            Sigma::Big(s) => s[v].clone(),
        }
    }

    pub fn get_f64(&self, v: usize) -> f64 {
        match self {
            Sigma::Word(s) => s[v] as f64,
            Sigma::Big(s) => s[v].to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Sigma::Word(s) => s.len(),
            Sigma::Big(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathCounts {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
    pub sigma: Sigma,
}

/// Counts shortest paths from `source` to every vertex.
pub fn shortest_path_counts(g: &Graph, source: usize) -> Result<PathCounts> {
    if source >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: source, n: g.n() });
    }
    let allowed = vec![true; g.n()];
    let (dist, order) = bfs_layers(g, source, &allowed);
    let sigma = match count_paths::<u64>(g, source, &dist, &order, &allowed) {
        Some(s) => Sigma::Word(s),
        None => Sigma::Big(
            count_paths::<BigUint>(g, source, &dist, &order, &allowed)
                .ok_or(Error::CountOverflow)?,
        ),
    };
    Ok(PathCounts { source, dist, sigma })
}

/// BFS restricted to vertices with `allowed[v]`. Returns distances and the
/// visit order (nondecreasing distance).
pub(crate) fn bfs_layers(
    g: &Graph,
    source: usize,
    allowed: &[bool],
) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut dist = vec![None; g.n()];
    let mut order = Vec::with_capacity(g.n());
    dist[source] = Some(0);
    order.push(source);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        let next = dist[u].unwrap() + 1;
        for v in g.neighbors(u) {
            if allowed[v] && dist[v].is_none() {
                dist[v] = Some(next);
                order.push(v);
            }
        }
    }
    (dist, order)
}

pub(crate) trait PathCounter: Clone + Zero {
    fn one() -> Self;
    fn checked_plus(&self, other: &Self) -> Option<Self>;
}

impl PathCounter for u64 {
    fn one() -> Self {
        1
    }
    fn checked_plus(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
}

impl PathCounter for BigUint {
    fn one() -> Self {
        BigUint::from(1u8)
    }
    fn checked_plus(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

/// sigma(v) = sum of sigma(u) over allowed neighbors one layer closer.
pub(crate) fn count_paths<C: PathCounter>(
    g: &Graph,
    source: usize,
    dist: &[Option<usize>],
    order: &[usize],
    allowed: &[bool],
) -> Option<Vec<C>> {
    let mut sigma = vec![C::zero(); g.n()];
    sigma[source] = C::one();
    for &v in order.iter().skip(1) {
        let dv = dist[v].unwrap();
        let mut acc = C::zero();
        for u in g.neighbors(v) {
            if allowed[u] && dist[u] == Some(dv - 1) {
                acc = acc.checked_plus(&sigma[u])?;
            }
        }
        sigma[v] = acc;
    }
    Some(sigma)
}
