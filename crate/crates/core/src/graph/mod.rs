//! Undirected, weighted, simple graphs with contiguous vertex ids.
//!
//! A [`Graph`] is immutable once built. Distances used by the group measures
//! are hop counts; edge weights only enter the random-walk machinery.

mod edgelist;
pub(crate) mod traversal;
mod vertex_set;

use std::collections::{HashMap, VecDeque};

pub use edgelist::{parse_edge_list, parse_label_file, write_edge_list, write_label_file};
pub use traversal::{
    bfs_distances, multi_source_distances, shortest_path_counts, DistanceField, PathCounts, Sigma,
};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<(usize, f64)>>,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
    connected: bool,
}

impl Graph {
    /// Builds a graph on `0..n` from weighted edges.
    ///
    /// Rejects self-loops, repeated pairs (in either orientation) and weights
    /// that are not strictly positive and finite.
    pub fn from_weighted_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v, weight) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u.to_string() });
            }
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(Error::NonPositiveWeight { weight });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push(Edge { u: a, v: b, weight });
            adj[a].push((b, weight));
            adj[b].push((a, weight));
        }
        list.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = list.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::DuplicateEdge {
                u: w[0].u.to_string(),
                v: w[0].v.to_string(),
            });
        }
        for nbrs in &mut adj {
            nbrs.sort_by_key(|&(x, _)| x);
        }
        let connected = components_of(&adj).1 <= 1;
        Ok(Graph {
            adj,
            edges: list,
            labels: None,
            connected,
        })
    }

    /// Builds a unit-weight graph.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_weighted_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    /// Attaches one label per vertex. Labels must be distinct.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `u` with edge weights, sorted by neighbor id.
    pub fn adjacency(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().map(|&(v, _)| v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// ω(u): the sum of weights of edges incident to `u`.
    pub fn weighted_degree(&self, u: usize) -> f64 {
        self.adj[u].iter().map(|&(_, w)| w).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.adj
            .get(u)?
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.connected {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, u: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[u].as_str())
    }

    /// Label of `u`, or its id when the graph is unlabeled.
    pub fn display_name(&self, u: usize) -> String {
        match self.label(u) {
            Some(l) => l.to_string(),
            None => u.to_string(),
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Resolves a token to a vertex id: labels first, then a numeric id.
    pub fn resolve(&self, token: &str) -> Result<usize> {
        if let Some(v) = self.vertex_by_label(token) {
            return Ok(v);
        }
        match token.parse::<usize>() {
            Ok(v) if v < self.n() => Ok(v),
            Ok(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            Err(_) => Err(Error::UnknownLabel(token.to_string())),
        }
    }

    /// Renumbers vertices so that old vertex `v` becomes `order.iter().position(v)`.
    /// `order` must be a permutation of `0..n`.
    pub fn permuted(&self, order: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut new_id = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::InvalidArgument("permutation has wrong length".into()));
        }
        for (i, &v) in order.iter().enumerate() {
            if v >= n || new_id[v] != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            new_id[v] = i;
        }
        let g = Graph::from_weighted_edges(
            n,
            self.edges.iter().map(|e| (new_id[e.u], new_id[e.v], e.weight)),
        )?;
        match &self.labels {
            Some(l) => g.with_labels(order.iter().map(|&v| l[v].clone()).collect()),
            None => Ok(g),
        }
    }

    /// Induced subgraph on `vertices` (any order, no repeats). Vertex `i` of the
    /// result is `vertices[i]`; labels are carried over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
            }
            if new_id[v] != usize::MAX {
                return Err(Error::RepeatedMember(v));
            }
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX)
            .map(|e| (new_id[e.u], new_id[e.v], e.weight));
        let g = Graph::from_weighted_edges(vertices.len(), edges)?;
        match &self.labels {
            Some(l) => g.with_labels(vertices.iter().map(|&v| l[v].clone()).collect()),
            None => Ok(g),
        }
    }

    /// Connected components as a per-vertex component index, numbered in
    /// order of their smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        components_of(&self.adj).0
    }

    /// Same graph with every weight replaced by 1.
    pub fn unweighted(&self) -> Graph {
        let mut g = self.clone();
        for nbrs in &mut g.adj {
            for e in nbrs.iter_mut() {
                e.1 = 1.0;
            }
        }
        for e in &mut g.edges {
            e.weight = 1.0;
        }
        g
    }
}

fn components_of(adj: &[Vec<(usize, f64)>]) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}
