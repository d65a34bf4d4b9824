//! The two 25-concept semantic networks (novice and expert) with their
//! alphabetical `0..24` labeling.

use crate::graph::{parse_edge_list, parse_label_file, Graph};

pub const NOVICE_EDGES: &str = include_str!("../fixtures/novice.edges");
pub const EXPERT_EDGES: &str = include_str!("../fixtures/expert.edges");
pub const LABELS: &str = include_str!("../fixtures/labels.tsv");

fn load(edges: &str) -> Graph {
    let g = parse_edge_list(edges, false).expect("bundled edge list parses");
    parse_label_file(&g, LABELS).expect("bundled labels cover every concept")
}

/// Network built by novices, vertices numbered alphabetically.
pub fn novice() -> Graph {
    load(NOVICE_EDGES)
}

/// Network built by experts, vertices numbered alphabetically.
pub fn expert() -> Graph {
    load(EXPERT_EDGES)
}
