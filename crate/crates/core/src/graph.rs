//! Simple undirected graphs with stable vertex identifiers and optional
//! role labels, plus the edge-list text format used by every tool in this
//! crate.
//!
//! Graphs are immutable after construction: every operation that changes
//! a graph returns a new value. Vertices are dense integers `0..n`;
//! renumbering caused by deletions is reported through [`DeletionMap`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Vertex identifier. Dense in `0..n` after construction.
pub type Vertex = u32;

/// Errors raised while parsing the edge-list or labels formats.
///
/// Each variant names the offending (1-based) line so CLI users can find it.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed line {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: vertex index {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

/// Errors raised when assembling a graph from raw edges.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: Vertex, v: Vertex },
}

/// A simple undirected graph: no self-loops, no parallel edges, symmetric
/// adjacency. Neighbor lists are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: vec![None; n],
        }
    }

    /// Builds a graph from an edge list, validating simplicity.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        for nbrs in &mut g.adj {
            nbrs.sort_unstable();
        }
        Ok(g)
    }

    fn add_edge_checked(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        if u as usize >= n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n });
        }
        if v as usize >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if self.adj[u as usize].contains(&v) {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        self.adj[u as usize].push(v);
        self.adj[v as usize].push(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// Sorted open neighborhood of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() as Vertex {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels[v as usize].as_deref()
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) {
        self.labels[v as usize] = Some(label.into());
    }

    pub(crate) fn set_label_opt(&mut self, v: Vertex, label: Option<String>) {
        self.labels[v as usize] = label;
    }

    /// True iff the vertices of `set` are pairwise adjacent.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the vertices of `set` are pairwise non-adjacent.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Deletes the given vertices, renumbering the survivors densely and
    /// returning the renumbering.
    pub fn delete_vertices(&self, delete: &[Vertex]) -> (Graph, DeletionMap) {
        let n = self.n();
        let mut keep = vec![true; n];
        for &v in delete {
            keep[v as usize] = false;
        }
        let mut old_to_new: Vec<Option<Vertex>> = vec![None; n];
        let mut next: Vertex = 0;
        for v in 0..n {
            if keep[v] {
                old_to_new[v] = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::empty(next as usize);
        for v in 0..n {
            let Some(nv) = old_to_new[v] else { continue };
            g.labels[nv as usize] = self.labels[v].clone();
            for &w in &self.adj[v] {
                if let Some(nw) = old_to_new[w as usize] {
                    g.adj[nv as usize].push(nw);
                }
            }
        }
        // Neighbor order is preserved by the monotone renumbering.
        (g, DeletionMap { old_to_new })
    }

    /// Sorted vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n()];
        seen[v as usize] = true;
        let mut comp = vec![v];
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comp
    }

    /// Subgraph induced by `set`, relabeled densely in the order of the
    /// sorted set; `result[i]` corresponds to `sorted(set)[i]`.
    pub fn induced_subgraph(&self, set: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut sorted: Vec<Vertex> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let idx_of = |v: Vertex| sorted.binary_search(&v).ok();
        let mut g = Graph::empty(sorted.len());
        for (i, &v) in sorted.iter().enumerate() {
            g.labels[i] = self.labels[v as usize].clone();
            for &w in self.neighbors(v) {
                if let Some(j) = idx_of(w) {
                    g.adj[i].push(j as Vertex);
                }
            }
        }
        (g, sorted)
    }

    /// Connected components of the subgraph induced by `set`, each sorted,
    /// ordered by smallest member.
    pub fn induced_components(&self, set: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut comps = Vec::new();
        let mut seen: BTreeMap<Vertex, bool> = set.iter().map(|&v| (v, false)).collect();
        for &start in set {
            if seen[&start] {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start, true);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if let Some(visited) = seen.get_mut(&w) {
                        if !*visited {
                            *visited = true;
                            comp.push(w);
                            stack.push(w);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// Renumbering produced by vertex deletions: `old_to_new[v]` is the new
/// identifier of `v`, or `None` when `v` was deleted (a tombstone).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionMap {
    pub old_to_new: Vec<Option<Vertex>>,
}

impl DeletionMap {
    /// Identity map on `n` vertices.
    pub fn identity(n: usize) -> Self {
        DeletionMap {
            old_to_new: (0..n as Vertex).map(Some).collect(),
        }
    }

    /// Composes `self` (applied first) with `later`.
    pub fn then(&self, later: &DeletionMap) -> DeletionMap {
        DeletionMap {
            old_to_new: self
                .old_to_new
                .iter()
                .map(|m| m.and_then(|v| later.old_to_new[v as usize]))
                .collect(),
        }
    }

    /// Original identifier of each surviving vertex, indexed by new id.
    pub fn new_to_old(&self) -> Vec<Vertex> {
        let survivors = self.old_to_new.iter().flatten().count();
        let mut out = vec![0; survivors];
        for (old, m) in self.old_to_new.iter().enumerate() {
            if let Some(new) = m {
                out[*new as usize] = old as Vertex;
            }
        }
        out
    }
}

/// Parses the edge-list format: first non-comment line `n m`, then `m`
/// lines `u v` with `0 <= u < v < n`; `#` starts a comment line.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut g: Option<Graph> = None;
    let mut expected_edges = 0usize;
    let mut found_edges = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(' ');
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => (a, b),
            _ => {
                return Err(ParseError::MalformedLine {
                    line: line_no,
                    text: line.to_string(),
                })
            }
        };
        let parse_field = |s: &str| -> Option<u64> {
            if s.chars().all(|c| c.is_ascii_digit()) {
                s.parse().ok()
            } else {
                None
            }
        };
        let (Some(a), Some(b)) = (parse_field(a), parse_field(b)) else {
            return Err(ParseError::MalformedLine {
                line: line_no,
                text: line.to_string(),
            });
        };
        match g {
            None => {
                let mut graph = Graph::empty(a as usize);
                graph.adj.iter_mut().for_each(|v| v.reserve(4));
                expected_edges = b as usize;
                g = Some(graph);
            }
            Some(ref mut graph) => {
                let n = graph.n();
                if a as usize >= n {
                    return Err(ParseError::VertexOutOfRange {
                        line: line_no,
                        vertex: a,
                        n,
                    });
                }
                if b as usize >= n {
                    return Err(ParseError::VertexOutOfRange {
                        line: line_no,
                        vertex: b,
                        n,
                    });
                }
                let (u, v) = (a as Vertex, b as Vertex);
                if u == v {
                    return Err(ParseError::SelfLoop {
                        line: line_no,
                        vertex: u,
                    });
                }
                if u > v {
                    // Format requires ascending endpoints.
                    return Err(ParseError::MalformedLine {
                        line: line_no,
                        text: line.to_string(),
                    });
                }
                if graph.adj[u as usize].contains(&v) {
                    return Err(ParseError::DuplicateEdge { line: line_no, u, v });
                }
                graph.adj[u as usize].push(v);
                graph.adj[v as usize].push(u);
                found_edges += 1;
            }
        }
    }
    let mut graph = g.ok_or(ParseError::MissingHeader)?;
    if found_edges != expected_edges {
        return Err(ParseError::EdgeCountMismatch {
            expected: expected_edges,
            found: found_edges,
        });
    }
    for nbrs in &mut graph.adj {
        nbrs.sort_unstable();
    }
    Ok(graph)
}

/// Serializes to the canonical edge-list form: header, then edges ascending,
/// LF endings. `parse_graph(serialize_graph(g))` reproduces `g`.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses a labels file: lines `v label-string`.
pub fn parse_labels(g: &mut Graph, text: &str) -> Result<(), ParseError> {
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some((v, label)) = line.split_once(' ') else {
            return Err(ParseError::MalformedLine {
                line: line_no,
                text: line.to_string(),
            });
        };
        let Ok(v) = v.parse::<u64>() else {
            return Err(ParseError::MalformedLine {
                line: line_no,
                text: line.to_string(),
            });
        };
        if v as usize >= g.n() {
            return Err(ParseError::VertexOutOfRange {
                line: line_no,
                vertex: v,
                n: g.n(),
            });
        }
        g.set_label(v as Vertex, label);
    }
    Ok(())
}

/// Serializes labels as `v label` lines, ascending, skipping unlabeled
/// vertices.
pub fn serialize_labels(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.n() as Vertex {
        if let Some(l) = g.label(v) {
            let _ = writeln!(out, "{v} {l}");
        }
    }
    out
}

/// Fill colors for the hardness-construction roles; other labels render
/// uncolored.
fn role_color(label: &str) -> Option<&'static str> {
    match label {
        "subset" => Some("lightblue"),
        "element" => Some("lightgreen"),
        "element-pendant" => Some("palegreen"),
        "guard" => Some("lightsalmon"),
        "guard-pendant" => Some("mistyrose"),
        _ => None,
    }
}

/// DOT export with labels and role-based colors.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() as Vertex {
        match g.label(v) {
            Some(l) => match role_color(l) {
                Some(c) => {
                    let _ = writeln!(
                        out,
                        "  {v} [label=\"{v}\\n{l}\", style=filled, fillcolor={c}];"
                    );
                }
                None => {
                    let _ = writeln!(out, "  {v} [label=\"{v}\\n{l}\"];");
                }
            },
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_claw() {
        let g = parse_graph("4 3\n0 1\n0 2\n0 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.degree(1), 1);
    }

    #[test]
    fn parses_triangle() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 1));
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_graph("2 1\n0 0\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, vertex: 0 });
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = parse_graph("3 2\n0 1\n0 1\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateEdge { line: 3, u: 0, v: 1 });
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = parse_graph("3 1\n0 5\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::VertexOutOfRange {
                line: 2,
                vertex: 5,
                n: 3
            }
        );
    }

    #[test]
    fn rejects_descending_endpoints_and_junk() {
        assert!(matches!(
            parse_graph("3 1\n2 1\n").unwrap_err(),
            ParseError::MalformedLine { line: 2, .. }
        ));
        assert!(matches!(
            parse_graph("3 1\n0 x\n").unwrap_err(),
            ParseError::MalformedLine { .. }
        ));
        assert!(matches!(
            parse_graph("3 1\n0  1\n").unwrap_err(),
            ParseError::MalformedLine { .. }
        ));
    }

    #[test]
    fn rejects_edge_count_mismatch() {
        assert_eq!(
            parse_graph("3 2\n0 1\n").unwrap_err(),
            ParseError::EdgeCountMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let g = parse_graph("# a triangle\n3 3\n\n0 1\n# middle\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn serialize_parse_round_trip_is_bit_identical() {
        let text = "5 4\n0 1\n0 2\n1 4\n2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(serialize_graph(&g), text);
    }

    #[test]
    fn delete_vertices_renumbers_and_maps() {
        let g = parse_graph("5 4\n0 1\n1 2\n2 3\n3 4\n").unwrap();
        let (h, map) = g.delete_vertices(&[1, 3]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(map.old_to_new, vec![Some(0), None, Some(1), None, Some(2)]);
        assert_eq!(map.new_to_old(), vec![0, 2, 4]);
    }

    #[test]
    fn deletion_maps_compose() {
        let a = DeletionMap {
            old_to_new: vec![Some(0), None, Some(1)],
        };
        let b = DeletionMap {
            old_to_new: vec![None, Some(0)],
        };
        assert_eq!(a.then(&b).old_to_new, vec![None, None, Some(0)]);
    }

    #[test]
    fn induced_components_of_path_plus_isolated() {
        // 0-1-2 path, 3 isolated inside the set, 4 outside.
        let g = parse_graph("5 3\n0 1\n1 2\n3 4\n").unwrap();
        let comps = g.induced_components(&[0, 1, 2, 3]);
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn labels_round_trip() {
        let mut g = parse_graph("3 1\n0 1\n").unwrap();
        parse_labels(&mut g, "0 subset\n2 guard\n").unwrap();
        assert_eq!(g.label(0), Some("subset"));
        assert_eq!(g.label(1), None);
        assert_eq!(serialize_labels(&g), "0 subset\n2 guard\n");
    }

    #[test]
    fn dot_export_mentions_roles() {
        let mut g = parse_graph("2 1\n0 1\n").unwrap();
        g.set_label(0, "guard");
        let dot = to_dot(&g);
        assert!(dot.contains("0 -- 1"));
        assert!(dot.contains("lightsalmon"));
    }
}
