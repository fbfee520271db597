//! Hardness instances: E-d-bounded hitting set, the padding gadget that
//! rules out single-subset hitting sets, the reduction to exclusive
//! K_{1,c}-free splitting, and constructive forward witnesses.
//!
//! Reduced-graph identifier layout, ascending and fixed: subset vertices,
//! element vertices, element pendants (grouped by element), guard
//! vertices, guard pendants (grouped by guard).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::split::SplitPlan;

/// Hitting-set instance: subsets of cardinality `arity` over universe
/// `0..universe`, budget `t`, with every element required to occur in
/// exactly `d` subsets. The collection may repeat subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: usize,
    pub subsets: Vec<Vec<u32>>,
    pub t: usize,
    pub d: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("subset {index} has {got} elements, expected {want}")]
    WrongArity { index: usize, got: usize, want: usize },
    #[error("subset {index} repeats an element")]
    DuplicateElement { index: usize },
    #[error("subset {index} references element {element} outside the universe {universe}")]
    ElementOutOfRange {
        index: usize,
        element: u32,
        universe: usize,
    },
    #[error("element {element} occurs in {got} subsets, expected exactly {want}")]
    WrongBoundedness { element: u32, got: usize, want: usize },
    #[error("the padding gadget is defined for pair systems only (c = 3)")]
    PaddingNeedsPairs,
    #[error("boundedness d = {d} must equal c = {c} for the construction")]
    BoundednessMismatch { d: usize, c: usize },
    #[error("subset {index} is not hit by the given element set")]
    NotAHittingSet { index: usize },
    #[error("universe of {universe} elements is too large for the brute-force oracle")]
    TooLargeForOracle { universe: usize },
    #[error("line {line}: malformed hitting-set line")]
    Malformed { line: usize },
}

impl HittingSetInstance {
    /// Common subset cardinality, 0 when there are no subsets.
    pub fn arity(&self) -> usize {
        self.subsets.first().map_or(0, Vec::len)
    }

    /// Checks arity uniformity, element ranges, and exact d-boundedness.
    pub fn validate(&self) -> Result<(), ReduceError> {
        let want = self.arity();
        let mut occurrences = vec![0usize; self.universe];
        for (index, subset) in self.subsets.iter().enumerate() {
            if subset.len() != want {
                return Err(ReduceError::WrongArity {
                    index,
                    got: subset.len(),
                    want,
                });
            }
            let mut sorted = subset.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != subset.len() {
                return Err(ReduceError::DuplicateElement { index });
            }
            for &e in subset {
                if e as usize >= self.universe {
                    return Err(ReduceError::ElementOutOfRange {
                        index,
                        element: e,
                        universe: self.universe,
                    });
                }
                occurrences[e as usize] += 1;
            }
        }
        for (element, &got) in occurrences.iter().enumerate() {
            if got != self.d {
                return Err(ReduceError::WrongBoundedness {
                    element: element as u32,
                    got,
                    want: self.d,
                });
            }
        }
        Ok(())
    }
}

/// Padding gadget: four fresh elements and the six pairs among them, with
/// budget t + 3. The output is a YES-instance iff the input is, remains
/// exactly-3-bounded, and no single subset of it is a hitting set.
pub fn pad_no_subset_hits_all(
    inst: &HittingSetInstance,
) -> Result<HittingSetInstance, ReduceError> {
    if inst.arity() != 2 {
        return Err(ReduceError::PaddingNeedsPairs);
    }
    let base = inst.universe as u32;
    let (a, b, c, d) = (base, base + 1, base + 2, base + 3);
    let mut subsets = inst.subsets.clone();
    subsets.extend_from_slice(&[
        vec![a, b],
        vec![a, c],
        vec![a, d],
        vec![b, c],
        vec![b, d],
        vec![c, d],
    ]);
    Ok(HittingSetInstance {
        universe: inst.universe + 4,
        subsets,
        t: inst.t + 3,
        d: inst.d,
    })
}

/// Minimum hitting-set size by exhaustive search over element subsets in
/// ascending size and lexicographic order.
pub fn brute_force_min_hitting_set(inst: &HittingSetInstance) -> Result<usize, ReduceError> {
    Ok(min_hitting_set(inst)?.len())
}

/// A minimum hitting set itself: the lexicographically least one of
/// minimum size.
pub fn min_hitting_set(inst: &HittingSetInstance) -> Result<Vec<u32>, ReduceError> {
    if inst.universe > 20 {
        return Err(ReduceError::TooLargeForOracle {
            universe: inst.universe,
        });
    }
    let masks: Vec<u32> = inst
        .subsets
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &e| m | (1 << e)))
        .collect();
    fn combos(
        universe: usize,
        size: usize,
        from: usize,
        chosen: &mut Vec<u32>,
        mask: u32,
        subsets: &[u32],
    ) -> Option<Vec<u32>> {
        if size == 0 {
            if subsets.iter().all(|&s| s & mask != 0) {
                return Some(chosen.clone());
            }
            return None;
        }
        for e in from..universe {
            if universe - e < size {
                return None;
            }
            chosen.push(e as u32);
            if let Some(hit) = combos(
                universe,
                size - 1,
                e + 1,
                chosen,
                mask | (1 << e),
                subsets,
            ) {
                return Some(hit);
            }
            chosen.pop();
        }
        None
    }
    for size in 0..=inst.universe {
        let mut chosen = Vec::with_capacity(size);
        if let Some(hit) = combos(inst.universe, size, 0, &mut chosen, 0, &masks) {
            return Ok(hit);
        }
    }
    unreachable!("the full universe hits every nonempty subset");
}

/// The constructed splitting instance, with the fixed identifier layout
/// and role labels.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Graph,
    /// Split budget: |S| + t.
    pub budget: usize,
    pub c: usize,
    pub num_subsets: usize,
    pub num_elements: usize,
    pub num_guards: usize,
}

impl ReducedInstance {
    pub fn subset_vertex(&self, i: usize) -> Vertex {
        i as Vertex
    }

    pub fn element_vertex(&self, u: usize) -> Vertex {
        (self.num_subsets + u) as Vertex
    }

    pub fn element_pendants(&self, u: usize) -> Vec<Vertex> {
        let per = self.c - 2;
        let base = self.num_subsets + self.num_elements + u * per;
        (base..base + per).map(|v| v as Vertex).collect()
    }

    pub fn guard_vertex(&self, j: usize) -> Vertex {
        (self.num_subsets + self.num_elements * (self.c - 1) + j) as Vertex
    }

    pub fn guard_pendants(&self, j: usize) -> Vec<Vertex> {
        let per = self.c - 2;
        let base =
            self.num_subsets + self.num_elements * (self.c - 1) + self.num_guards + j * per;
        (base..base + per).map(|v| v as Vertex).collect()
    }

    pub fn subset_vertices(&self) -> Vec<Vertex> {
        (0..self.num_subsets).map(|i| self.subset_vertex(i)).collect()
    }

    pub fn guard_vertices(&self) -> Vec<Vertex> {
        (0..self.num_guards).map(|j| self.guard_vertex(j)).collect()
    }
}

/// Builds the splitting instance from an E-c-bounded (c-1)-hitting-set
/// instance: subset vertices form a clique joined to a guard clique of
/// size |S| + t + 1; element vertices join their subsets; elements and
/// guards carry c - 2 pendants each; the budget is |S| + t.
pub fn reduce_hs_to_split(
    inst: &HittingSetInstance,
    c: usize,
) -> Result<ReducedInstance, ReduceError> {
    assert!(c >= 3);
    inst.validate()?;
    if inst.arity() != c - 1 {
        return Err(ReduceError::WrongArity {
            index: 0,
            got: inst.arity(),
            want: c - 1,
        });
    }
    if inst.d != c {
        return Err(ReduceError::BoundednessMismatch { d: inst.d, c });
    }
    let s = inst.subsets.len();
    let u = inst.universe;
    let b = s + inst.t + 1;
    let pendants_per = c - 2;
    let n = s + u + u * pendants_per + b + b * pendants_per;

    let layout = ReducedInstance {
        graph: Graph::empty(0),
        budget: s + inst.t,
        c,
        num_subsets: s,
        num_elements: u,
        num_guards: b,
    };

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    // Clique A on the subset vertices.
    for i in 0..s {
        for j in (i + 1)..s {
            edges.push((layout.subset_vertex(i), layout.subset_vertex(j)));
        }
    }
    // Elements join the subsets containing them; pendants hang off.
    for (i, subset) in inst.subsets.iter().enumerate() {
        for &e in subset {
            edges.push((layout.subset_vertex(i), layout.element_vertex(e as usize)));
        }
    }
    for e in 0..u {
        for p in layout.element_pendants(e) {
            edges.push((layout.element_vertex(e), p));
        }
    }
    // Guard clique B, joined completely to A, with pendants.
    for i in 0..b {
        for j in (i + 1)..b {
            edges.push((layout.guard_vertex(i), layout.guard_vertex(j)));
        }
    }
    for j in 0..b {
        for i in 0..s {
            edges.push((layout.subset_vertex(i), layout.guard_vertex(j)));
        }
        for p in layout.guard_pendants(j) {
            edges.push((layout.guard_vertex(j), p));
        }
    }
    let normalized: Vec<(Vertex, Vertex)> = edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    let mut graph = Graph::from_edges(n, &normalized).expect("construction is simple");
    for i in 0..s {
        graph.set_label(layout.subset_vertex(i), "subset");
    }
    for e in 0..u {
        graph.set_label(layout.element_vertex(e), "element");
        for p in layout.element_pendants(e) {
            graph.set_label(p, "element-pendant");
        }
    }
    for j in 0..b {
        graph.set_label(layout.guard_vertex(j), "guard");
        for p in layout.guard_pendants(j) {
            graph.set_label(p, "guard-pendant");
        }
    }
    Ok(ReducedInstance { graph, ..layout })
}

/// Builds the forward witness for c = 3: each subset vertex splits off a
/// single block holding one element of `hitting_set`; every element of
/// `hitting_set` is then split so that neither copy keeps three pairwise
/// non-adjacent neighbors. Costs |S| + |H|.
pub fn hitting_set_to_plan(
    inst: &HittingSetInstance,
    reduced: &ReducedInstance,
    hitting_set: &[u32],
) -> Result<SplitPlan, ReduceError> {
    if reduced.c != 3 {
        return Err(ReduceError::PaddingNeedsPairs);
    }
    let mut plan = SplitPlan::new();
    // choosers[u] = subsets whose split isolates element u.
    let mut choosers: Vec<Vec<usize>> = vec![Vec::new(); inst.universe];
    for (i, subset) in inst.subsets.iter().enumerate() {
        let rep = subset
            .iter()
            .copied()
            .filter(|e| hitting_set.contains(e))
            .min()
            .ok_or(ReduceError::NotAHittingSet { index: i })?;
        choosers[rep as usize].push(i);
        let sv = reduced.subset_vertex(i);
        let rep_vertex = reduced.element_vertex(rep as usize);
        let rest: Vec<Vertex> = reduced
            .graph
            .neighbors(sv)
            .iter()
            .copied()
            .filter(|&w| w != rep_vertex)
            .collect();
        plan.parts.insert(sv, vec![vec![rep_vertex], rest]);
    }
    for &h in hitting_set {
        let ev = reduced.element_vertex(h as usize);
        let pendant = reduced.element_pendants(h as usize)[0];
        let subset_nbrs: Vec<Vertex> = reduced
            .graph
            .neighbors(ev)
            .iter()
            .copied()
            .filter(|&w| w != pendant)
            .collect();
        let who = &choosers[h as usize];
        if who.len() >= 2 {
            // Two or more isolated subset copies will stay adjacent to
            // this element; pairing one with the pendant leaves both
            // copies with two neighbors.
            let mate = reduced.subset_vertex(who[0]);
            let rest: Vec<Vertex> = subset_nbrs.into_iter().filter(|&w| w != mate).collect();
            plan.parts.insert(ev, vec![vec![pendant, mate], rest]);
        } else {
            plan.parts.insert(ev, vec![vec![pendant], subset_nbrs]);
        }
    }
    Ok(plan)
}

/// Built-in cubic graphs as exactly-3-bounded pair systems, with the
/// budget set to the graph's minimum vertex cover.
pub fn builtin_pair_system(name: &str) -> Option<HittingSetInstance> {
    let (universe, edges, t): (usize, Vec<(u32, u32)>, usize) = match name {
        "k4" => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 3),
        "k33" => (
            6,
            vec![
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
            3,
        ),
        "prism" => (
            6,
            vec![
                (0, 1),
                (0, 2),
                (1, 2),
                (3, 4),
                (3, 5),
                (4, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
            4,
        ),
        "cube" => (
            8,
            vec![
                (0, 1),
                (0, 2),
                (0, 4),
                (1, 3),
                (1, 5),
                (2, 3),
                (2, 6),
                (3, 7),
                (4, 5),
                (4, 6),
                (5, 7),
                (6, 7),
            ],
            4,
        ),
        _ => return None,
    };
    Some(HittingSetInstance {
        universe,
        subsets: edges.into_iter().map(|(a, b)| vec![a, b]).collect(),
        t,
        d: 3,
    })
}

/// Parses the hitting-set file format: header `u s t d`, then `s` lines
/// of ascending element identifiers.
pub fn parse_hs(text: &str) -> Result<HittingSetInstance, ReduceError> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut subsets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(' ').collect();
        match header {
            None => {
                if fields.len() != 4 {
                    return Err(ReduceError::Malformed { line: line_no });
                }
                let mut vals = [0usize; 4];
                for (slot, f) in vals.iter_mut().zip(&fields) {
                    *slot = f.parse().map_err(|_| ReduceError::Malformed { line: line_no })?;
                }
                header = Some((vals[0], vals[1], vals[2], vals[3]));
            }
            Some(_) => {
                let mut subset = Vec::with_capacity(fields.len());
                for f in &fields {
                    let e: u32 = f.parse().map_err(|_| ReduceError::Malformed { line: line_no })?;
                    if let Some(&last) = subset.last() {
                        if e <= last {
                            return Err(ReduceError::Malformed { line: line_no });
                        }
                    }
                    subset.push(e);
                }
                subsets.push(subset);
            }
        }
    }
    let (universe, s, t, d) = header.ok_or(ReduceError::Malformed { line: 1 })?;
    if subsets.len() != s {
        return Err(ReduceError::Malformed { line: 1 });
    }
    Ok(HittingSetInstance {
        universe,
        subsets,
        t,
        d,
    })
}

/// Serializes to the hitting-set file format.
pub fn serialize_hs(inst: &HittingSetInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} {} {}",
        inst.universe,
        inst.subsets.len(),
        inst.t,
        inst.d
    );
    for subset in &inst.subsets {
        let line: Vec<String> = subset.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
