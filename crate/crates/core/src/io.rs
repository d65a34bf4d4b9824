//! Run manifests, triple-dump ingestion and table rendering.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write;

use regex::Regex;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::measures::{Measure, Score};
use crate::optimizer::{CrossMeasureReport, OptimumResult};
use crate::sampling::{Family, FamilyParams, Sample};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Hex SHA-256 of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
}

/// Provenance attached to every emitted result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_digest: Option<String>,
    pub seeds: Vec<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub tool_version: String,
    pub wall_time_ms: f64,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> RunManifest {
        RunManifest {
            command: command.into(),
            input_digest: None,
            seeds: Vec::new(),
            tolerances: BTreeMap::new(),
            tool_version: TOOL_VERSION.to_string(),
            wall_time_ms: 0.0,
        }
    }

    /// Manifest as `# key: value` lines, for headers of text outputs.
    pub fn as_comment(&self) -> String {
        let json = serde_json::to_value(self).expect("manifest serializes");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = json {
            for (k, v) in map {
                writeln!(out, "# {k}: {v}").unwrap();
            }
        }
        out
    }
}

/// A result together with the manifest of the run that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub manifest: RunManifest,
    pub result: T,
}

/// Scores of one set under several measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityReport {
    pub set: VertexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub scores: Vec<MeasureScore>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureScore {
    pub measure: Measure,
    pub score: Score,
}

impl CentralityReport {
    pub fn new(g: &Graph, set: VertexSet, scores: Vec<(Measure, Score)>) -> CentralityReport {
        let labels = g
            .labels()
            .map(|_| set.members().iter().map(|&v| g.display_name(v)).collect());
        CentralityReport {
            set,
            labels,
            scores: scores
                .into_iter()
                .map(|(measure, score)| MeasureScore { measure, score })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub start: usize,
    pub steps: u64,
    pub visited: usize,
    pub vertices: usize,
    pub edges: usize,
    pub reduced: bool,
    pub original_ids: Vec<usize>,
}

impl From<&Sample> for SampleSummary {
    fn from(s: &Sample) -> SampleSummary {
        SampleSummary {
            start: s.start,
            steps: s.steps,
            visited: s.visited,
            vertices: s.graph.n(),
            edges: s.graph.m(),
            reduced: s.was_reduced(),
            original_ids: s.original_ids.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySummary {
    pub params: FamilyParams,
    pub vertices: usize,
    pub edges: usize,
    pub hub: usize,
    pub clique_solution: VertexSet,
    pub star_solution: VertexSet,
}

impl FamilySummary {
    pub fn new(params: FamilyParams, f: &Family) -> FamilySummary {
        FamilySummary {
            params,
            vertices: f.graph.n(),
            edges: f.graph.m(),
            hub: f.hub,
            clique_solution: f.clique_solution(),
            star_solution: f.star_solution(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IngestSummary {
    pub triples: usize,
    pub matched: usize,
    pub duplicates: usize,
    pub self_loops: usize,
    pub vertices: usize,
    pub edges: usize,
}

impl From<&Ingested> for IngestSummary {
    fn from(i: &Ingested) -> IngestSummary {
        IngestSummary {
            triples: i.triples,
            matched: i.matched,
            duplicates: i.duplicates,
            self_loops: i.self_loops,
            vertices: i.graph.n(),
            edges: i.graph.m(),
        }
    }
}

/// JSON schemas for the command outputs, keyed by command name.
pub const SCHEMAS: [(&str, &str); 6] = [
    ("centrality", include_str!("../schemas/centrality.schema.json")),
    ("optimum", include_str!("../schemas/optimum.schema.json")),
    ("hitting", include_str!("../schemas/hitting.schema.json")),
    ("sample", include_str!("../schemas/sample.schema.json")),
    ("family", include_str!("../schemas/family.schema.json")),
    ("ingest", include_str!("../schemas/ingest.schema.json")),
];

pub fn schema(command: &str) -> Option<&'static str> {
    SCHEMAS.iter().find(|(c, _)| *c == command).map(|(_, s)| *s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    /// Undirected graph over subjects and objects, labeled by their names.
    pub graph: Graph,
    pub triples: usize,
    pub matched: usize,
    pub duplicates: usize,
    pub self_loops: usize,
}

/// Builds an undirected edge list from whitespace-separated
/// `subject predicate object [.]` lines, keeping triples whose predicate
/// matches `predicate` (all triples when `None`). Repeated pairs collapse to
/// one edge and self-loops are dropped; both are counted.
pub fn ingest_triples(text: &str, predicate: Option<&Regex>) -> Result<Ingested> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pairs = HashSet::new();
    let mut edges = Vec::new();
    let (mut triples, mut matched, mut duplicates, mut self_loops) = (0, 0, 0, 0);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.last() == Some(&".") {
            tokens.pop();
        }
        if tokens.len() != 3 {
            return Err(Error::Malformed {
                line: i + 1,
                message: format!("expected `subject predicate object`, found {} fields", tokens.len()),
            });
        }
        triples += 1;
        if let Some(re) = predicate {
            if !re.is_match(tokens[1]) {
                continue;
            }
        }
        matched += 1;
        let (s, o) = (tokens[0], tokens[2]);
        if s == o {
            self_loops += 1;
            continue;
        }
        let mut id = |t: &str| -> usize {
            if let Some(&v) = index.get(t) {
                return v;
            }
            names.push(t.to_string());
            index.insert(t.to_string(), names.len() - 1);
            names.len() - 1
        };
        let (u, v) = (id(s), id(o));
        if !pairs.insert((u.min(v), u.max(v))) {
            duplicates += 1;
            continue;
        }
        edges.push((u, v));
    }
    let graph = Graph::from_edges(names.len(), edges)?.with_labels(names)?;
    Ok(Ingested {
        graph,
        triples,
        matched,
        duplicates,
        self_loops,
    })
}

/// One cell of a report table: up to two sets, then `... (n)` for the rest.
pub fn render_cell(g: &Graph, result: &OptimumResult, use_labels: bool) -> String {
    let shown: Vec<String> = result
        .optimal_sets
        .iter()
        .take(2)
        .map(|s| if use_labels { s.display_with(g) } else { s.to_string() })
        .collect();
    let mut cell = shown.join(", ");
    let extra = result.optimal_sets.len().saturating_sub(2);
    if extra > 0 {
        write!(cell, ", ... ({extra})").unwrap();
    }
    cell
}

/// Table with one row per k and one column per measure.
pub fn render_report_tsv(g: &Graph, report: &CrossMeasureReport, use_labels: bool) -> String {
    let mut out = String::from("k");
    for m in &report.measures {
        write!(out, "\t{}", m.heading()).unwrap();
    }
    out.push('\n');
    for k in 1..=report.k_max {
        write!(out, "{k}").unwrap();
        for &m in &report.measures {
            let cell = report
                .result(k, m)
                .map(|r| render_cell(g, r, use_labels))
                .unwrap_or_default();
            write!(out, "\t{cell}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Best value per (k, measure), in the same layout as [`render_report_tsv`].
pub fn render_values_tsv(report: &CrossMeasureReport) -> String {
    let mut out = String::from("k");
    for m in &report.measures {
        write!(out, "\t{}", m.heading()).unwrap();
    }
    out.push('\n');
    for k in 1..=report.k_max {
        write!(out, "{k}").unwrap();
        for &m in &report.measures {
            let v = report.result(k, m).map(|r| r.best_value.render()).unwrap_or_default();
            write!(out, "\t{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Rows of `measure<TAB>score`.
pub fn render_scores_tsv(report: &CentralityReport) -> String {
    let mut out = String::from("measure\tscore\n");
    for row in &report.scores {
        writeln!(out, "{}\t{}", row.measure.name(), row.score.render()).unwrap();
    }
    out
}

/// `sample_id<TAB>original_id[<TAB>label]` lines.
pub fn write_sample_mapping(sample: &Sample, source: &Graph) -> String {
    let mut out = String::new();
    for (i, &orig) in sample.original_ids.iter().enumerate() {
        match source.label(orig) {
            Some(l) => writeln!(out, "{i}\t{orig}\t{l}").unwrap(),
            None => writeln!(out, "{i}\t{orig}").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(
            digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn ingest_filters_by_predicate() {
        let text = "a broader b .\nb related c\nc broader d\n";
        let re = Regex::new("^broader$").unwrap();
        let ing = ingest_triples(text, Some(&re)).unwrap();
        assert_eq!(ing.graph.m(), 2);
        assert_eq!((ing.triples, ing.matched), (3, 2));
        assert_eq!(ing.graph.labels().unwrap(), &["a", "b", "c", "d"]);
    }

    #[test]
    fn ingest_drops_self_loops_and_collapses_duplicates() {
        let text = "x p x\nx p y\ny q x\n";
        let re = Regex::new("^(p|q)$").unwrap();
        let ing = ingest_triples(text, Some(&re)).unwrap();
        assert_eq!(ing.self_loops, 1);
        assert_eq!(ing.duplicates, 1);
        assert_eq!(ing.graph.m(), 1);
    }

    #[test]
    fn ingest_rejects_malformed_line() {
        assert!(matches!(
            ingest_triples("a b\n", None),
            Err(Error::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn cell_overflow_count() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let sets: Vec<VertexSet> = (0..4).map(|v| VertexSet::new(4, [v]).unwrap()).collect();
        let r = OptimumResult {
            measure: Measure::Degree,
            direction: Measure::Degree.direction(),
            k: 1,
            best_value: Score::real(0.0),
            optimal_sets: sets,
            evaluated: 4,
            wall_time: Duration::ZERO,
        };
        assert_eq!(render_cell(&g, &r, false), "{0}, {1}, ... (2)");
    }

    #[test]
    fn manifest_comment_lines() {
        let mut m = RunManifest::new("optimum");
        m.seeds.push(7);
        let text = m.as_comment();
        assert!(text.contains("# command: \"optimum\""));
        assert!(text.contains("# seeds: [7]"));
    }
}
