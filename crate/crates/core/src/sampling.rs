//! Random-walk sampling of large graphs and the hub-with-gadgets family
//! that separates random-walk centrality from the other measures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_RESTART_PROBABILITY: f64 = 0.15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleConfig {
    pub target_nodes: usize,
    pub restart_probability: f64,
    pub seed: u64,
    pub step_budget: u64,
}

impl SampleConfig {
    /// Restart probability 0.15 and a budget of `10_000 * target_nodes` steps.
    pub fn new(target_nodes: usize, seed: u64) -> SampleConfig {
        SampleConfig {
            target_nodes,
            restart_probability: DEFAULT_RESTART_PROBABILITY,
            seed,
            step_budget: 10_000 * target_nodes as u64,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.target_nodes < 2 {
            return Err(Error::InvalidArgument("target_nodes must be at least 2".into()));
        }
        if !(self.restart_probability > 0.0 && self.restart_probability < 1.0) {
            return Err(Error::InvalidArgument(
                "restart_probability must lie strictly between 0 and 1".into(),
            ));
        }
        if self.step_budget < self.target_nodes as u64 {
            return Err(Error::InvalidArgument(
                "step_budget must be at least target_nodes".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// Induced subgraph on the sampled vertices, restricted to its largest
    /// connected component.
    pub graph: Graph,
    /// `original_ids[i]` is the source-graph id of sample vertex `i`, ascending.
    pub original_ids: Vec<usize>,
    /// Distinct vertices collected by the walk.
    pub visited: usize,
    pub steps: u64,
    pub start: usize,
}

impl Sample {
    /// True when the largest-component rule dropped vertices.
    pub fn was_reduced(&self) -> bool {
        self.original_ids.len() < self.visited
    }
}

/// Walks from a seed-chosen start vertex, jumping back to the start with the
/// restart probability and otherwise moving to a uniform neighbor, until
/// `target_nodes` distinct vertices have been seen.
pub fn random_walk_sample(g: &Graph, cfg: &SampleConfig) -> Result<Sample> {
    cfg.validate()?;
    g.ensure_connected()?;
    if g.n() < cfg.target_nodes {
        return Err(Error::InvalidArgument(format!(
            "graph has {} vertices, fewer than the target of {}",
            g.n(),
            cfg.target_nodes
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = rng.random_range(0..g.n());
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut distinct = 1;
    let mut at = start;
    let mut steps = 0;
    while distinct < cfg.target_nodes {
        if steps == cfg.step_budget {
            return Err(Error::SampleBudgetExhausted {
                distinct,
                target: cfg.target_nodes,
                budget: cfg.step_budget,
            });
        }
        steps += 1;
        if rng.random_bool(cfg.restart_probability) {
            at = start;
        } else {
            let nbrs = g.adjacency(at);
            at = nbrs[rng.random_range(0..nbrs.len())].0;
        }
        if !seen[at] {
            seen[at] = true;
            distinct += 1;
        }
    }
    let chosen: Vec<usize> = (0..g.n()).filter(|&v| seen[v]).collect();
    let induced = g.induced_subgraph(&chosen)?;
    let (graph, original_ids) = largest_component(&induced, &chosen)?;
    Ok(Sample {
        graph,
        original_ids,
        visited: distinct,
        steps,
        start,
    })
}

/// Restricts `g` to its largest component (ties go to the component holding
/// the smallest vertex id), carrying `ids` along.
fn largest_component(g: &Graph, ids: &[usize]) -> Result<(Graph, Vec<usize>)> {
    if g.is_connected() {
        return Ok((g.clone(), ids.to_vec()));
    }
    let comp = g.components();
    let count = comp.iter().max().map_or(0, |c| c + 1);
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap();
    let keep: Vec<usize> = (0..g.n()).filter(|&v| comp[v] == best).collect();
    let sub = g.induced_subgraph(&keep)?;
    Ok((sub, keep.iter().map(|&v| ids[v]).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    /// Size of every clique and every star.
    pub n: usize,
    /// Number of cliques and of stars.
    pub m: usize,
}

/// A generated family member with its landmark vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub graph: Graph,
    pub hub: usize,
    /// The clique vertex adjacent to the hub, one per clique.
    pub clique_attach: VertexSet,
    /// The star root adjacent to the hub, one per star.
    pub star_roots: VertexSet,
}

impl Family {
    /// Hub plus every clique attach vertex.
    pub fn clique_solution(&self) -> VertexSet {
        self.with_hub(&self.clique_attach)
    }

    /// Hub plus every star root.
    pub fn star_solution(&self) -> VertexSet {
        self.with_hub(&self.star_roots)
    }

    fn with_hub(&self, s: &VertexSet) -> VertexSet {
        let members = std::iter::once(self.hub).chain(s.members().iter().copied());
        VertexSet::new(self.graph.n(), members).expect("landmarks are distinct")
    }
}

/// Builds the hub graph with `m` `n`-cliques and `m` `n`-vertex stars.
///
/// Layout: the hub is vertex 0; clique `i` (0-based) occupies
/// `1 + i*n .. 1 + (i+1)*n` with its attach vertex first; star `i` occupies
/// `1 + (m+i)*n .. 1 + (m+i+1)*n` with its root first.
pub fn generate_family(p: FamilyParams) -> Result<Family> {
    let FamilyParams { n, m } = p;
    if n < 2 || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "family needs n >= 2 and m >= 1, got n = {n}, m = {m}"
        )));
    }
    let total = 1 + 2 * m * n;
    let hub = 0;
    let mut edges = Vec::new();
    let mut labels = vec!["v".to_string()];
    let mut attach = Vec::with_capacity(m);
    let mut roots = Vec::with_capacity(m);
    for i in 0..m {
        let base = 1 + i * n;
        attach.push(base);
        edges.push((hub, base));
        for a in base..base + n {
            for b in a + 1..base + n {
                edges.push((a, b));
            }
        }
        labels.push(format!("k{}", i + 1));
        labels.extend((1..n).map(|j| format!("k{}.{}", i + 1, j)));
    }
    for i in 0..m {
        let base = 1 + (m + i) * n;
        roots.push(base);
        edges.push((hub, base));
        edges.extend((base + 1..base + n).map(|leaf| (base, leaf)));
        labels.push(format!("t{}", i + 1));
        labels.extend((1..n).map(|j| format!("t{}.{}", i + 1, j)));
    }
    let graph = Graph::from_edges(total, edges)?.with_labels(labels)?;
    Ok(Family {
        clique_attach: VertexSet::new(total, attach)?,
        star_roots: VertexSet::new(total, roots)?,
        graph,
        hub,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_family() {
        let f = generate_family(FamilyParams { n: 2, m: 1 }).unwrap();
        assert_eq!(f.graph.n(), 5);
        assert_eq!(f.graph.m(), 4);
        assert_eq!(f.clique_attach.members(), &[1]);
        assert_eq!(f.star_roots.members(), &[3]);
        assert!(f.graph.has_edge(1, 2) && f.graph.has_edge(3, 4));
    }

    #[test]
    fn family_structure() {
        for (n, m) in [(3, 2), (3, 3), (4, 2), (5, 4)] {
            let f = generate_family(FamilyParams { n, m }).unwrap();
            let g = &f.graph;
            assert_eq!(g.n(), 1 + 2 * m * n);
            assert!(g.is_connected());
            assert_eq!(g.degree(f.hub), 2 * m);
            for &k in f.clique_attach.members() {
                assert_eq!(g.degree(k), n);
            }
            for &t in f.star_roots.members() {
                assert_eq!(g.degree(t), n);
            }
            assert_eq!(f.clique_solution().len(), m + 1);
        }
        let f = generate_family(FamilyParams { n: 3, m: 2 }).unwrap();
        assert_eq!(f.graph.degree(0), 4);
        assert_eq!(f.graph.label(7), Some("t1"));
    }

    #[test]
    fn rejects_degenerate_params() {
        assert!(generate_family(FamilyParams { n: 1, m: 3 }).is_err());
        assert!(generate_family(FamilyParams { n: 3, m: 0 }).is_err());
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn complete_graph_sample_is_complete() {
        let s = random_walk_sample(&complete(50), &SampleConfig::new(40, 5)).unwrap();
        assert_eq!(s.graph.n(), 40);
        assert_eq!(s.graph.m(), 40 * 39 / 2);
    }

    #[test]
    fn whole_path_when_target_is_n() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = random_walk_sample(&g, &SampleConfig::new(3, 0)).unwrap();
        assert_eq!(s.original_ids, vec![0, 1, 2]);
        assert_eq!(s.graph, g);
    }

    #[test]
    fn budget_exhaustion_reports_progress() {
        let g = Graph::from_edges(100, (0..99).map(|i| (i, i + 1))).unwrap();
        let mut cfg = SampleConfig::new(90, 1);
        cfg.step_budget = 90;
        match random_walk_sample(&g, &cfg) {
            Err(Error::SampleBudgetExhausted { distinct, target: 90, .. }) => assert!(distinct < 90),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sampled_edges_exist_in_source() {
        let g = Graph::from_edges(60, (0..60).flat_map(|i| [(i, (i + 1) % 60), (i, (i + 7) % 60)]))
            .unwrap();
        let s = random_walk_sample(&g, &SampleConfig::new(20, 42)).unwrap();
        assert!(s.graph.is_connected());
        for e in s.graph.edges() {
            assert!(g.has_edge(s.original_ids[e.u], s.original_ids[e.v]));
        }
    }

    #[test]
    fn largest_component_rule() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let (h, ids) = largest_component(&g, &[10, 11, 12, 13, 14]).unwrap();
        assert_eq!(ids, vec![12, 13, 14]);
        assert_eq!(h.m(), 2);
    }
}
