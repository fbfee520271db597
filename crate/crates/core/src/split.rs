//! Vertex splitting: single splits (exclusive or inclusive), explicit
//! split sequences, and batched exclusive split plans.
//!
//! A [`SplitPlan`] partitions each split vertex's incident edges; applying
//! it realizes the cumulative effect of `cost` exclusive splits in one
//! step. A [`SplitTrace`] is the sequential form: an ordered list of
//! single splits, each referencing the graph produced by its predecessors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Split variant: exclusive splits distribute the neighborhood, inclusive
/// splits may duplicate part of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    Exclusive,
    Inclusive,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("split block for vertex {vertex} is empty")]
    EmptyBlock { vertex: Vertex },
    #[error("blocks of vertex {vertex} do not cover its neighborhood (missing {missing})")]
    UnionMismatch { vertex: Vertex, missing: Vertex },
    #[error("vertex {member} is not a neighbor of {vertex}")]
    NotANeighbor { vertex: Vertex, member: Vertex },
    #[error("exclusive split of vertex {vertex} has overlapping blocks (at {member})")]
    ExclusiveOverlap { vertex: Vertex, member: Vertex },
    #[error("blocks of vertex {vertex} overlap (at {member})")]
    BlockOverlap { vertex: Vertex, member: Vertex },
    #[error("vertex {vertex} out of range")]
    UnknownVertex { vertex: Vertex },
    #[error("trace step {step} references vertex {vertex} not alive in the current graph")]
    DeadVertex { step: usize, vertex: Vertex },
}

/// Result of one single split: `v1` reuses the split vertex's identifier,
/// `v2` is the new last identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleSplit {
    pub graph: Graph,
    pub v1: Vertex,
    pub v2: Vertex,
}

/// Splits `v` into `v1` (neighborhood `x`, reusing `v`'s identifier) and
/// `v2` (neighborhood `y`, identifier `n`). Both copies inherit `v`'s
/// label; all other adjacencies are unchanged.
pub fn apply_single_split(
    g: &Graph,
    v: Vertex,
    x: &[Vertex],
    y: &[Vertex],
    mode: SplitMode,
) -> Result<SingleSplit, SplitError> {
    let n = g.n();
    if v as usize >= n {
        return Err(SplitError::UnknownVertex { vertex: v });
    }
    if x.is_empty() || y.is_empty() {
        return Err(SplitError::EmptyBlock { vertex: v });
    }
    let mut in_x = vec![false; n];
    let mut in_y = vec![false; n];
    for &w in x {
        if !g.has_edge(v, w) {
            return Err(SplitError::NotANeighbor { vertex: v, member: w });
        }
        in_x[w as usize] = true;
    }
    for &w in y {
        if !g.has_edge(v, w) {
            return Err(SplitError::NotANeighbor { vertex: v, member: w });
        }
        if in_x[w as usize] && mode == SplitMode::Exclusive {
            return Err(SplitError::ExclusiveOverlap { vertex: v, member: w });
        }
        in_y[w as usize] = true;
    }
    for &w in g.neighbors(v) {
        if !in_x[w as usize] && !in_y[w as usize] {
            return Err(SplitError::UnionMismatch { vertex: v, missing: w });
        }
    }

    let v2 = n as Vertex;
    let mut edges = Vec::with_capacity(g.edge_count() + y.len());
    for (a, b) in g.edges() {
        if a != v && b != v {
            edges.push((a, b));
        }
    }
    for &w in x {
        edges.push((v.min(w), v.max(w)));
    }
    for &w in y {
        edges.push((w.min(v2), v2.max(w)));
    }
    let mut graph = Graph::from_edges(n + 1, &edges).expect("split preserves simplicity");
    for u in 0..n as Vertex {
        graph.set_label_opt(u, g.label(u).map(str::to_string));
    }
    graph.set_label_opt(v2, g.label(v).map(str::to_string));
    Ok(SingleSplit { graph, v1: v, v2 })
}

/// Per-vertex partition of incident edges encoding a batch of exclusive
/// splits. An incident edge is identified by the neighbor at its far end.
/// Vertices absent from the map implicitly keep the trivial one-block
/// partition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitPlan {
    pub parts: BTreeMap<Vertex, Vec<Vec<Vertex>>>,
}

impl SplitPlan {
    pub fn new() -> Self {
        SplitPlan::default()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total number of exclusive splits the plan encodes.
    pub fn cost(&self) -> usize {
        self.parts.values().map(|blocks| blocks.len() - 1).sum()
    }

    /// Checks that every entry is a partition of the vertex's neighborhood
    /// in `g` into nonempty blocks.
    pub fn validate(&self, g: &Graph) -> Result<(), SplitError> {
        for (&v, blocks) in &self.parts {
            if v as usize >= g.n() {
                return Err(SplitError::UnknownVertex { vertex: v });
            }
            if blocks.is_empty() {
                return Err(SplitError::EmptyBlock { vertex: v });
            }
            let mut seen = vec![false; g.n()];
            let mut covered = 0usize;
            for block in blocks {
                if block.is_empty() {
                    return Err(SplitError::EmptyBlock { vertex: v });
                }
                for &w in block {
                    if !g.has_edge(v, w) {
                        return Err(SplitError::NotANeighbor { vertex: v, member: w });
                    }
                    if seen[w as usize] {
                        return Err(SplitError::BlockOverlap { vertex: v, member: w });
                    }
                    seen[w as usize] = true;
                    covered += 1;
                }
            }
            if covered != g.degree(v) {
                let missing = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .find(|&w| !seen[w as usize])
                    .expect("some neighbor uncovered");
                return Err(SplitError::UnionMismatch { vertex: v, missing });
            }
        }
        Ok(())
    }
}

/// Cost of a plan: blocks minus one, summed over split vertices.
pub fn plan_cost(plan: &SplitPlan) -> usize {
    plan.cost()
}

/// How the vertices of an [`apply_split_plan`] result relate to the source
/// graph: each result vertex is one block of one original vertex.
#[derive(Debug, Clone)]
pub struct SplitProvenance {
    /// Original vertex -> result identifiers, one per block, in block order.
    pub copies: BTreeMap<Vertex, Vec<Vertex>>,
    /// Result identifier -> (original vertex, block index).
    pub origin: Vec<(Vertex, usize)>,
}

/// Applies a batch of exclusive splits. The result has one vertex per
/// (vertex, block) pair: block 0 of `v` keeps identifier `v`, further
/// blocks get fresh identifiers `n, n+1, ...` ordered by (vertex, block).
/// Each edge `{u, v}` of `g` yields exactly one edge, joining the copy of
/// `u` whose block contains `v` with the copy of `v` whose block contains
/// `u`.
pub fn apply_split_plan(g: &Graph, plan: &SplitPlan) -> Result<(Graph, SplitProvenance), SplitError> {
    plan.validate(g)?;
    let n = g.n();
    let mut copies: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    let mut origin: Vec<(Vertex, usize)> = (0..n).map(|v| (v as Vertex, 0)).collect();
    let mut next = n as Vertex;
    for v in 0..n as Vertex {
        let block_count = plan.parts.get(&v).map_or(1, Vec::len);
        let mut ids = vec![v];
        for j in 1..block_count {
            ids.push(next);
            origin.push((v, j));
            next += 1;
        }
        copies.insert(v, ids);
    }

    // block_of[v][w] = index of v's block containing neighbor w.
    let block_of = |v: Vertex, w: Vertex| -> usize {
        match plan.parts.get(&v) {
            None => 0,
            Some(blocks) => blocks
                .iter()
                .position(|b| b.contains(&w))
                .expect("validated partition covers the neighborhood"),
        }
    };

    let mut edges = Vec::with_capacity(g.edge_count());
    for (u, w) in g.edges() {
        let cu = copies[&u][block_of(u, w)];
        let cw = copies[&w][block_of(w, u)];
        edges.push((cu.min(cw), cu.max(cw)));
    }
    let mut graph = Graph::from_edges(next as usize, &edges).expect("plan preserves simplicity");
    for (id, &(orig, _)) in origin.iter().enumerate() {
        graph.set_label_opt(id as Vertex, g.label(orig).map(str::to_string));
    }
    Ok((
        graph,
        SplitProvenance {
            copies,
            origin,
        },
    ))
}

/// One step of a split sequence, in the identifiers of the graph produced
/// by the preceding steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitStep {
    pub vertex: Vertex,
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
    pub mode: SplitMode,
}

/// An explicit sequence of single splits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitTrace {
    pub steps: Vec<SplitStep>,
}

impl SplitTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Replays a trace, returning the final graph.
pub fn apply_trace(g: &Graph, trace: &SplitTrace) -> Result<Graph, SplitError> {
    let mut cur = g.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        if step.vertex as usize >= cur.n() {
            return Err(SplitError::DeadVertex {
                step: i,
                vertex: step.vertex,
            });
        }
        cur = apply_single_split(&cur, step.vertex, &step.x, &step.y, step.mode)?.graph;
    }
    Ok(cur)
}

/// Composes an exclusive trace into a plan of equal cost. The plan's
/// application is isomorphic to the trace's final graph (identifier
/// assignment may differ when later steps split earlier copies).
pub fn plan_from_trace(g: &Graph, trace: &SplitTrace) -> Result<SplitPlan, SplitError> {
    let mut plan = SplitPlan::new();
    let mut cur = g.clone();
    // origin[c] = original vertex of current vertex c; block_idx[c] = its
    // block within plan.parts[origin].
    let mut origin: Vec<Vertex> = (0..g.n() as Vertex).collect();
    let mut block_idx: Vec<usize> = vec![0; g.n()];
    for (i, step) in trace.steps.iter().enumerate() {
        if step.mode != SplitMode::Exclusive {
            return Err(SplitError::ExclusiveOverlap {
                vertex: step.vertex,
                member: *step.x.first().unwrap_or(&0),
            });
        }
        if step.vertex as usize >= cur.n() {
            return Err(SplitError::DeadVertex {
                step: i,
                vertex: step.vertex,
            });
        }
        let orig = origin[step.vertex as usize];
        let b = block_idx[step.vertex as usize];
        let to_orig = |set: &[Vertex]| -> Vec<Vertex> {
            let mut m: Vec<Vertex> = set.iter().map(|&w| origin[w as usize]).collect();
            m.sort_unstable();
            m
        };
        let bx = to_orig(&step.x);
        let by = to_orig(&step.y);
        let blocks = plan
            .parts
            .entry(orig)
            .or_insert_with(|| vec![g.neighbors(orig).to_vec()]);
        blocks[b] = bx;
        blocks.push(by);
        let new_block = blocks.len() - 1;

        let split = apply_single_split(&cur, step.vertex, &step.x, &step.y, SplitMode::Exclusive)?;
        cur = split.graph;
        origin.push(orig);
        block_idx.push(new_block);
    }
    Ok(plan)
}

/// Parses the plan text format: one line per split vertex,
/// `v: a,b|c|d,e` with members ascending within each block.
pub fn parse_plan(text: &str) -> Result<SplitPlan, PlanParseError> {
    let mut plan = SplitPlan::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some((v, rest)) = line.split_once(": ") else {
            return Err(PlanParseError::Malformed { line: line_no });
        };
        let Ok(v) = v.parse::<Vertex>() else {
            return Err(PlanParseError::Malformed { line: line_no });
        };
        if plan.parts.contains_key(&v) {
            return Err(PlanParseError::DuplicateVertex { line: line_no, vertex: v });
        }
        let mut blocks = Vec::new();
        for block_text in rest.split('|') {
            let mut block = Vec::new();
            for member in block_text.split(',') {
                let Ok(m) = member.parse::<Vertex>() else {
                    return Err(PlanParseError::Malformed { line: line_no });
                };
                if let Some(&last) = block.last() {
                    if m <= last {
                        return Err(PlanParseError::NotAscending { line: line_no });
                    }
                }
                block.push(m);
            }
            blocks.push(block);
        }
        plan.parts.insert(v, blocks);
    }
    Ok(plan)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanParseError {
    #[error("line {line}: malformed plan line")]
    Malformed { line: usize },
    #[error("line {line}: block members not ascending")]
    NotAscending { line: usize },
    #[error("line {line}: vertex {vertex} listed twice")]
    DuplicateVertex { line: usize, vertex: Vertex },
}

/// Serializes a plan canonically: vertices ascending, blocks ordered by
/// smallest member, members ascending.
pub fn serialize_plan(plan: &SplitPlan) -> String {
    let mut out = String::new();
    for (&v, blocks) in &plan.parts {
        let mut blocks: Vec<Vec<Vertex>> = blocks.clone();
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b.first().copied());
        let rendered: Vec<String> = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let _ = writeln!(out, "{v}: {}", rendered.join("|"));
    }
    out
}

/// Serializes a trace: one line per step, `v: x1,x2|y1,y2 mode`.
pub fn serialize_trace(trace: &SplitTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        let side = |set: &[Vertex]| {
            set.iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mode = match step.mode {
            SplitMode::Exclusive => "exclusive",
            SplitMode::Inclusive => "inclusive",
        };
        let _ = writeln!(out, "{}: {}|{} {mode}", step.vertex, side(&step.x), side(&step.y));
    }
    out
}

/// Parses the trace format written by [`serialize_trace`].
pub fn parse_trace(text: &str) -> Result<SplitTrace, PlanParseError> {
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some((v, rest)) = line.split_once(": ") else {
            return Err(PlanParseError::Malformed { line: line_no });
        };
        let Ok(vertex) = v.parse::<Vertex>() else {
            return Err(PlanParseError::Malformed { line: line_no });
        };
        let Some((blocks, mode)) = rest.rsplit_once(' ') else {
            return Err(PlanParseError::Malformed { line: line_no });
        };
        let mode = match mode {
            "exclusive" => SplitMode::Exclusive,
            "inclusive" => SplitMode::Inclusive,
            _ => return Err(PlanParseError::Malformed { line: line_no }),
        };
        let Some((xs, ys)) = blocks.split_once('|') else {
            return Err(PlanParseError::Malformed { line: line_no });
        };
        let parse_side = |text: &str| -> Result<Vec<Vertex>, PlanParseError> {
            let mut side = Vec::new();
            for member in text.split(',') {
                let m: Vertex = member
                    .parse()
                    .map_err(|_| PlanParseError::Malformed { line: line_no })?;
                side.push(m);
            }
            Ok(side)
        };
        steps.push(SplitStep {
            vertex,
            x: parse_side(xs)?,
            y: parse_side(ys)?,
            mode,
        });
    }
    Ok(SplitTrace { steps })
}
