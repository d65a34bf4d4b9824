//! Line-oriented edge lists (`u v [w]`, `#` comments) and label files
//! (`index<TAB>label`).

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

fn at(line: usize, e: Error) -> Error {
    Error::AtLine {
        line,
        source: Box::new(e),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses an edge list. Vertex tokens are numeric ids when every token in the
/// file is a nonnegative integer; otherwise all tokens are treated as names
/// and interned in first-seen order, and become the graph's labels.
///
/// With `weighted == false` a third column is an error; with `weighted ==
/// true` it is optional and defaults to 1.
pub fn parse_edge_list(text: &str, weighted: bool) -> Result<Graph> {
    let mut rows: Vec<(usize, &str, &str, f64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw);
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let w = match tokens.len() {
            0 => continue,
            2 => 1.0,
            3 if weighted => tokens[2].parse::<f64>().map_err(|_| Error::Malformed {
                line,
                message: format!("cannot parse weight {:?}", tokens[2]),
            })?,
            3 => {
                return Err(Error::Malformed {
                    line,
                    message: "weight column present but the graph is loaded as unweighted".into(),
                })
            }
            k => {
                return Err(Error::Malformed {
                    line,
                    message: format!("expected `u v` or `u v w`, found {k} fields"),
                })
            }
        };
        if !(w > 0.0 && w.is_finite()) {
            return Err(at(line, Error::NonPositiveWeight { weight: w }));
        }
        rows.push((line, tokens[0], tokens[1], w));
    }

    let numeric = rows
        .iter()
        .all(|(_, a, b, _)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());

    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut edges = Vec::with_capacity(rows.len());
    let mut seen = HashSet::new();
    let mut n = 0;
    for &(line, a, b, w) in &rows {
        if a == b {
            return Err(at(line, Error::SelfLoop { vertex: a.to_string() }));
        }
        let (u, v) = if numeric {
            (a.parse::<usize>().unwrap(), b.parse::<usize>().unwrap())
        } else {
            let mut ids = [0; 2];
            for (slot, t) in ids.iter_mut().zip([a, b]) {
                *slot = *index.entry(t).or_insert_with(|| {
                    names.push(t.to_string());
                    names.len() - 1
                });
            }
            (ids[0], ids[1])
        };
        if numeric && u == v {
            return Err(at(line, Error::SelfLoop { vertex: a.to_string() }));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(at(
                line,
                Error::DuplicateEdge {
                    u: a.to_string(),
                    v: b.to_string(),
                },
            ));
        }
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v, w));
    }
    let g = Graph::from_weighted_edges(n, edges)?;
    if numeric {
        Ok(g)
    } else {
        g.with_labels(names)
    }
}

/// Applies an `index<TAB>label` file.
///
/// On an unlabeled graph the labels are attached to the given ids. On a graph
/// whose labels came from named vertices, the file instead fixes the id of
/// each name, and the graph is renumbered accordingly.
pub fn parse_label_file(g: &Graph, text: &str) -> Result<Graph> {
    let n = g.n();
    let mut by_index: Vec<Option<String>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (idx, label) = raw.split_once('\t').ok_or_else(|| Error::Malformed {
            line,
            message: "expected `index<TAB>label`".into(),
        })?;
        let idx: usize = idx.trim().parse().map_err(|_| Error::Malformed {
            line,
            message: format!("cannot parse index {:?}", idx.trim()),
        })?;
        if idx >= n {
            return Err(at(line, Error::VertexOutOfRange { vertex: idx, n }));
        }
        if by_index[idx].is_some() {
            return Err(Error::Malformed {
                line,
                message: format!("index {idx} labeled twice"),
            });
        }
        by_index[idx] = Some(label.trim().to_string());
    }
    let labels: Vec<String> = by_index
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| Error::InvalidArgument(format!("label file has no entry for vertex {i}")))
        })
        .collect::<Result<_>>()?;

    match g.labels() {
        None => g.clone().with_labels(labels),
        Some(_) => {
            let order = labels
                .iter()
                .map(|l| g.vertex_by_label(l).ok_or_else(|| Error::UnknownLabel(l.clone())))
                .collect::<Result<Vec<_>>>()?;
            g.permuted(&order)
        }
    }
}

/// Canonical edge list: numeric ids, edges sorted with `u < v`, weights only
/// when some edge is not unit weight. Labels go to [`write_label_file`].
pub fn write_edge_list(g: &Graph) -> String {
    let weighted = !g.is_unit_weighted();
    let mut out = format!("# vertices {} edges {}\n", g.n(), g.m());
    for e in g.edges() {
        if weighted {
            writeln!(out, "{} {} {}", e.u, e.v, e.weight).unwrap();
        } else {
            writeln!(out, "{} {}", e.u, e.v).unwrap();
        }
    }
    out
}

pub fn write_label_file(g: &Graph) -> Option<String> {
    let labels = g.labels()?;
    let mut out = String::new();
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "{i}\t{l}").unwrap();
    }
    Some(out)
}
