use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::Graph;
use crate::error::{Error, Result};

/// A nonempty set of vertices of a graph on `n` vertices, kept sorted so that
/// equal sets compare equal and sets order lexicographically.
#[derive(Clone, Debug)]
pub struct VertexSet {
    members: Vec<usize>,
    in_set: Vec<bool>,
}

impl VertexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<VertexSet> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        members.sort_unstable();
        let mut in_set = vec![false; n];
        for &v in &members {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if in_set[v] {
                return Err(Error::RepeatedMember(v));
            }
            in_set[v] = true;
        }
        Ok(VertexSet { members, in_set })
    }

    /// Builds a set from already sorted, distinct, in-range members.
    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<usize>) -> VertexSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut in_set = vec![false; n];
        for &v in &members {
            in_set[v] = true;
        }
        VertexSet { members, in_set }
    }

    /// Parses a comma-separated list of labels or ids, e.g. `"livingthing,red"`.
    pub fn parse(g: &Graph, spec: &str) -> Result<VertexSet> {
        let ids = spec
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| g.resolve(t))
            .collect::<Result<Vec<_>>>()?;
        VertexSet::new(g.n(), ids)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of vertices in the ambient graph.
    pub fn universe(&self) -> usize {
        self.in_set.len()
    }

    pub fn complement_len(&self) -> usize {
        self.in_set.len() - self.members.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_set.get(v).copied().unwrap_or(false)
    }

    pub fn mask(&self) -> &[bool] {
        &self.in_set
    }

    pub fn complement(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_set
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(v, _)| v)
    }

    /// Errors unless the set leaves at least one vertex of `g` outside it.
    pub fn ensure_proper(&self, g: &Graph) -> Result<()> {
        if self.universe() != g.n() {
            return Err(Error::InvalidArgument(format!(
                "vertex set built for {} vertices used on a graph with {}",
                self.universe(),
                g.n()
            )));
        }
        if self.complement_len() == 0 {
            return Err(Error::FullSet);
        }
        Ok(())
    }

    pub fn display_with(&self, g: &Graph) -> String {
        let names: Vec<String> = self.members.iter().map(|&v| g.display_name(v)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Every edge has an endpoint in the set.
    pub fn is_vertex_cover(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|e| self.contains(e.u) || self.contains(e.v))
    }

    /// Every vertex outside the set has a neighbor inside it.
    pub fn is_dominating(&self, g: &Graph) -> bool {
        self.complement()
            .all(|v| g.neighbors(v).any(|w| self.contains(w)))
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.in_set.len() == other.in_set.len()
    }
}

impl Eq for VertexSet {}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .cmp(&other.members)
            .then(self.in_set.len().cmp(&other.in_set.len()))
    }
}

impl std::hash::Hash for VertexSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.members.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let s = VertexSet::new(5, [3, 0, 2]).unwrap();
        assert_eq!(s.members(), &[0, 2, 3]);
        assert_eq!(s.complement_len(), 2);
        assert_eq!(s.complement().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(s, VertexSet::new(5, [2, 3, 0]).unwrap());
        assert_eq!(s.to_string(), "{0, 2, 3}");
    }

    #[test]
    fn rejects_bad_members() {
        assert_eq!(VertexSet::new(3, []), Err(Error::EmptySet));
        assert_eq!(VertexSet::new(3, [1, 1]), Err(Error::RepeatedMember(1)));
        assert!(matches!(
            VertexSet::new(3, [3]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn cover_and_domination_on_path() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let center = VertexSet::new(3, [1]).unwrap();
        assert!(center.is_vertex_cover(&g));
        assert!(center.is_dominating(&g));
        let end = VertexSet::new(3, [0]).unwrap();
        assert!(!end.is_vertex_cover(&g));
        assert!(!end.is_dominating(&g));
    }

    #[test]
    fn parse_labels_and_ids() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)])
            .unwrap()
            .with_labels(vec!["x".into(), "y".into(), "z".into()])
            .unwrap();
        assert_eq!(VertexSet::parse(&g, "z, 0").unwrap().members(), &[0, 2]);
        assert_eq!(
            VertexSet::parse(&g, "dragon"),
            Err(Error::UnknownLabel("dragon".into()))
        );
    }
}
