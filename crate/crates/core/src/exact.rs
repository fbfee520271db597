//! Exhaustive oracles for tiny instances: a definition-level breadth-first
//! search over whole graphs (exclusive or inclusive splits) and a
//! branch-and-bound exact solver for exclusive splitting in the plan
//! model. Both serve as ground truth for the other solvers.
//!
//! Also hosts the small-graph machinery the oracles and test suites rely
//! on: canonical forms (minimum adjacency encoding over a
//! refinement-guided permutation search) and enumeration of all
//! non-isomorphic graphs up to a vertex bound.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::detect::{find_centers, is_k1c_free};
use crate::graph::{Graph, Vertex};
use crate::split::{
    apply_split_plan, apply_trace, SplitMode, SplitPlan, SplitStep, SplitTrace,
};

/// Hard cap of the bitset representation.
const MAX_BITS: usize = 16;
/// Tiny-scale limit for the sequential oracle: the final graph after `k`
/// splits has `n + k` vertices.
const SEQUENTIAL_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance exceeds tiny-scale limits (n = {n}, k = {k}, limit n + k <= {limit})")]
    TooLarge { n: usize, k: usize, limit: usize },
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("malformed certificate: {0}")]
    Malformed(#[from] crate::split::SplitError),
    #[error("certificate step mode not allowed in {0:?} mode")]
    ModeNotAllowed(SplitMode),
}

// ---------------------------------------------------------------------------
// Bitset graphs
// ---------------------------------------------------------------------------

/// Adjacency-bitset graph for n <= 16; the oracles' working representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct BitGraph {
    n: u8,
    adj: [u16; MAX_BITS],
}

impl BitGraph {
    fn from_graph(g: &Graph) -> Option<BitGraph> {
        if g.n() > MAX_BITS {
            return None;
        }
        let mut adj = [0u16; MAX_BITS];
        for v in 0..g.n() {
            for &w in g.neighbors(v as Vertex) {
                adj[v] |= 1 << w;
            }
        }
        Some(BitGraph {
            n: g.n() as u8,
            adj,
        })
    }

    fn to_graph(self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n as usize {
            // Keep only neighbors above u so each edge appears once.
            let mut rest = self.adj[u] >> (u + 1) << (u + 1);
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                edges.push((u as Vertex, w as Vertex));
            }
        }
        Graph::from_edges(self.n as usize, &edges).expect("bitgraph is simple")
    }

    #[inline]
    fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    /// Does `mask` contain an independent set of `need` vertices?
    fn mask_has_independent(&self, mask: u16, need: u32) -> bool {
        if need == 0 {
            return true;
        }
        if (mask.count_ones()) < need {
            return false;
        }
        let w = mask.trailing_zeros() as usize;
        let wbit = 1u16 << w;
        // Include w, then exclude it.
        self.mask_has_independent(mask & !self.adj[w] & !wbit, need - 1)
            || self.mask_has_independent(mask & !wbit, need)
    }

    fn is_center(&self, v: usize, c: u32) -> bool {
        self.degree(v) >= c && self.mask_has_independent(self.adj[v], c)
    }

    fn is_k1c_free(&self, c: u32) -> bool {
        (0..self.n as usize).all(|v| !self.is_center(v, c))
    }

    /// Splits `v` into `v` (neighborhood `x`) and a fresh last vertex
    /// (neighborhood `y`). Requires `x | y == adj[v]` and both nonempty.
    fn split(&self, v: usize, x: u16, y: u16) -> BitGraph {
        debug_assert!(x | y == self.adj[v] && x != 0 && y != 0);
        debug_assert!((self.n as usize) < MAX_BITS);
        let n = self.n as usize;
        let mut out = *self;
        out.n += 1;
        out.adj[v] = x;
        out.adj[n] = y;
        let vbit = 1u16 << v;
        let nbit = 1u16 << n;
        let mut nbrs = self.adj[v];
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let wbit = 1u16 << w;
            if x & wbit == 0 {
                out.adj[w] &= !vbit;
            }
            if y & wbit != 0 {
                out.adj[w] |= nbit;
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

/// Canonical adjacency fingerprint of a graph on at most 16 vertices. Two
/// such graphs have equal forms iff they are isomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: u8,
    pub code: u128,
}

/// Iterated neighbor-color refinement. Returns the stable coloring;
/// colors are ranks, equal colors mean "not yet distinguished".
fn refine(g: &BitGraph, colors: &mut [u32]) {
    let n = g.n as usize;
    loop {
        // Signature: own color plus sorted multiset of neighbor colors.
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb = Vec::with_capacity(g.degree(v) as usize);
                let mut rest = g.adj[v];
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    nb.push(colors[w]);
                }
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut new_colors = vec![0u32; n];
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                rank += 1;
            }
            new_colors[sigs[i].2] = rank;
        }
        if new_colors == colors {
            return;
        }
        colors.copy_from_slice(&new_colors);
    }
}

/// Upper-triangle adjacency code under the ordering `perm` (perm[i] = the
/// vertex placed at position i).
fn encode(g: &BitGraph, perm: &[usize]) -> u128 {
    let n = g.n as usize;
    let mut code = 0u128;
    for i in 0..n {
        for j in (i + 1)..n {
            code <<= 1;
            if g.adj[perm[i]] & (1 << perm[j]) != 0 {
                code |= 1;
            }
        }
    }
    code
}

fn canonical_search(g: &BitGraph, colors: &[u32], best: &mut Option<u128>) {
    let n = g.n as usize;
    // First color class with more than one vertex, in color order.
    let mut cells: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, &c) in colors.iter().enumerate().take(n) {
        cells.entry(c).or_default().push(v);
    }
    let mut color_order: Vec<u32> = cells.keys().copied().collect();
    color_order.sort_unstable();
    let target = color_order.iter().find(|c| cells[c].len() > 1);
    match target {
        None => {
            // Discrete: the coloring is a total order.
            let mut perm: Vec<usize> = (0..n).collect();
            perm.sort_by_key(|&v| colors[v]);
            let code = encode(g, &perm);
            if best.map_or(true, |b| code < b) {
                *best = Some(code);
            }
        }
        Some(&c) => {
            for &v in &cells[&c] {
                // Individualize v: give it a color just below its cell.
                let mut next: Vec<u32> = colors.iter().map(|&x| x * 2 + 1).collect();
                next[v] = c * 2;
                refine(g, &mut next);
                canonical_search(g, &next, best);
            }
        }
    }
}

fn bit_canonical(g: &BitGraph) -> u128 {
    let n = g.n as usize;
    if n <= 1 {
        return 0;
    }
    let mut colors = vec![0u32; n];
    refine(g, &mut colors);
    let mut best = None;
    canonical_search(g, &colors, &mut best);
    best.expect("at least one ordering")
}

/// Canonical form of a graph with at most 16 vertices.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, OracleError> {
    let bg = BitGraph::from_graph(g).ok_or(OracleError::TooLarge {
        n: g.n(),
        k: 0,
        limit: MAX_BITS,
    })?;
    Ok(CanonicalForm {
        n: bg.n,
        code: bit_canonical(&bg),
    })
}

/// Isomorphism test for graphs with at most 16 vertices.
pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> Result<bool, OracleError> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

// ---------------------------------------------------------------------------
// Small-graph enumeration
// ---------------------------------------------------------------------------

/// All non-isomorphic graphs with 1..=max_n vertices satisfying `keep`.
///
/// `keep` must be hereditary (closed under vertex deletion), since graphs
/// are generated by extending smaller ones; a bounded-maximum-degree
/// filter qualifies. Requires `max_n <= 11` to keep the search tame.
pub fn enumerate_graphs_up_to(max_n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    assert!(max_n >= 1 && max_n <= 11);
    let mut out = Vec::new();
    let single = BitGraph {
        n: 1,
        adj: [0; MAX_BITS],
    };
    let mut level = vec![single];
    let root = single.to_graph();
    if keep(&root) {
        out.push(root);
    }
    for n in 1..max_n {
        let mut seen: HashSet<u128> = HashSet::new();
        let mut next_level = Vec::new();
        for bg in &level {
            for nbhd in 0..(1u32 << n) as u16 {
                let mut cand = *bg;
                cand.n += 1;
                cand.adj[n] = nbhd;
                let mut rest = nbhd;
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    cand.adj[w] |= 1 << n;
                }
                let graph = cand.to_graph();
                if !keep(&graph) {
                    continue;
                }
                if seen.insert(bit_canonical(&cand)) {
                    next_level.push(cand);
                    out.push(graph);
                }
            }
        }
        level = next_level;
    }
    out
}

// ---------------------------------------------------------------------------
// Sequential oracle
// ---------------------------------------------------------------------------

/// One expansion: every admissible (x, y) pair for the mode, unordered.
/// Exclusive: disjoint bipartitions; inclusive: any covering pair (a
/// disjoint pair is an inclusive split whose overlap happens to be empty).
fn admissible_pairs(nbhd: u16, mode: SplitMode) -> Vec<(u16, u16)> {
    let mut pairs = Vec::new();
    if nbhd == 0 {
        return pairs;
    }
    // A single neighbor admits no exclusive bipartition; inclusive still
    // allows duplicating it.
    if nbhd.count_ones() < 2 && mode == SplitMode::Exclusive {
        return pairs;
    }
    let low = 1u16 << nbhd.trailing_zeros();
    match mode {
        SplitMode::Exclusive => {
            // x ranges over proper nonempty subsets containing the lowest
            // neighbor; y is the complement.
            let rest = nbhd & !low;
            let mut sub = rest;
            loop {
                let x = low | sub;
                let y = nbhd & !x;
                if y != 0 {
                    pairs.push((x, y));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        SplitMode::Inclusive => {
            // All unordered (x, y) with x | y == nbhd, both nonempty.
            let mut seen = HashSet::new();
            let mut x = nbhd;
            loop {
                if x != 0 {
                    // y must contain nbhd \ x and may repeat any subset of x.
                    let required = nbhd & !x;
                    let mut z = x;
                    loop {
                        let y = required | z;
                        if y != 0 {
                            let key = if x <= y { (x, y) } else { (y, x) };
                            if seen.insert(key) {
                                pairs.push(key);
                            }
                        }
                        if z == 0 {
                            break;
                        }
                        z = (z - 1) & x;
                    }
                }
                if x == 0 {
                    break;
                }
                x = (x - 1) & nbhd;
            }
            pairs.sort_unstable();
        }
    }
    pairs
}

struct SearchNode {
    graph: BitGraph,
    parent: usize,
    step: Option<(usize, u16, u16)>,
}

fn mask_to_vertices(mask: u16) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as Vertex);
        rest &= rest - 1;
    }
    out
}

fn reconstruct_trace(nodes: &[SearchNode], mut idx: usize) -> SplitTrace {
    let mut steps = Vec::new();
    while let Some((v, x, y)) = nodes[idx].step {
        let mode = if x & y == 0 {
            SplitMode::Exclusive
        } else {
            SplitMode::Inclusive
        };
        steps.push(SplitStep {
            vertex: v as Vertex,
            x: mask_to_vertices(x),
            y: mask_to_vertices(y),
            mode,
        });
        idx = nodes[idx].parent;
    }
    steps.reverse();
    SplitTrace { steps }
}

/// Definition-level ground truth: breadth-first search over canonical
/// forms, applying every legal single split of the mode at every vertex.
/// Returns a shortest trace reaching a K_{1,c}-free graph within `k`
/// steps, or `None`.
pub fn solve_exact_sequential(
    g: &Graph,
    k: usize,
    c: usize,
    mode: SplitMode,
) -> Result<Option<SplitTrace>, OracleError> {
    assert!(c >= 3);
    let n = g.n();
    if n + k > SEQUENTIAL_LIMIT || n > MAX_BITS {
        return Err(OracleError::TooLarge {
            n,
            k,
            limit: SEQUENTIAL_LIMIT,
        });
    }
    let root = BitGraph::from_graph(g).expect("within bitgraph range");
    let c = c as u32;
    if root.is_k1c_free(c) {
        return Ok(Some(SplitTrace::default()));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut nodes = vec![SearchNode {
        graph: root,
        parent: 0,
        step: None,
    }];
    let mut visited: HashSet<(u8, u128)> = HashSet::new();
    visited.insert((root.n, bit_canonical(&root)));
    let mut frontier = vec![0usize];
    for depth in 1..=k {
        let last_level = depth == k;
        let mut next = Vec::new();
        for &idx in &frontier {
            let cur = nodes[idx].graph;
            let nv = cur.n as usize;
            for v in 0..nv {
                if cur.adj[v] == 0 {
                    continue;
                }
                for (x, y) in admissible_pairs(cur.adj[v], mode) {
                    let child = cur.split(v, x, y);
                    if child.is_k1c_free(c) {
                        nodes.push(SearchNode {
                            graph: child,
                            parent: idx,
                            step: Some((v, x, y)),
                        });
                        return Ok(Some(reconstruct_trace(&nodes, nodes.len() - 1)));
                    }
                    if last_level {
                        continue;
                    }
                    if visited.insert((child.n, bit_canonical(&child))) {
                        nodes.push(SearchNode {
                            graph: child,
                            parent: idx,
                            step: Some((v, x, y)),
                        });
                        next.push(nodes.len() - 1);
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() && !last_level {
            return Ok(None);
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Branch-and-bound exact solver (exclusive, plan model)
// ---------------------------------------------------------------------------

struct BranchState<'a> {
    source: &'a Graph,
    c: usize,
    k: usize,
    nodes_left: u64,
    best: Option<SplitPlan>,
    best_cost: usize,
}

fn branch(state: &mut BranchState<'_>, plan: &SplitPlan) -> Result<(), OracleError> {
    if state.nodes_left == 0 {
        return Err(OracleError::BudgetExceeded);
    }
    state.nodes_left -= 1;
    let cost = plan.cost();
    let (current, prov) = apply_split_plan(state.source, plan).expect("refinements stay valid");
    let report = find_centers(&current, state.c);
    if report.centers.is_empty() {
        if cost < state.best_cost {
            state.best_cost = cost;
            state.best = Some(plan.clone());
        }
        return Ok(());
    }
    // Every remaining center needs at least one further split.
    let lower = cost + report.centers.len();
    if lower > state.k || lower >= state.best_cost {
        return Ok(());
    }
    // Branch on the least center's block: it must be refined.
    let center = report.centers[0];
    let (orig, block_idx) = prov.origin[center as usize];
    let block: Vec<Vertex> = match plan.parts.get(&orig) {
        Some(blocks) => blocks[block_idx].clone(),
        None => state.source.neighbors(orig).to_vec(),
    };
    debug_assert!(block.len() >= 2);
    // All bipartitions keeping the least member in the replaced block.
    let rest = &block[1..];
    for pick in 0..(1u32 << rest.len()) {
        let mut x = vec![block[0]];
        let mut y = Vec::new();
        for (i, &w) in rest.iter().enumerate() {
            if pick & (1 << i) != 0 {
                x.push(w);
            } else {
                y.push(w);
            }
        }
        if y.is_empty() {
            continue;
        }
        let mut refined = plan.clone();
        let blocks = refined
            .parts
            .entry(orig)
            .or_insert_with(|| vec![state.source.neighbors(orig).to_vec()]);
        blocks[block_idx] = x;
        blocks.push(y);
        branch(state, &refined)?;
    }
    Ok(())
}

/// Minimum-cost exclusive split plan within budget `k`, or `None`. The
/// search branches on one current claw at a time (a split can remove a
/// claw only at its center) and prunes with the remaining-center count.
pub fn solve_exact_branching(
    g: &Graph,
    k: usize,
    c: usize,
    node_budget: Option<u64>,
) -> Result<Option<SplitPlan>, OracleError> {
    assert!(c >= 3);
    let mut state = BranchState {
        source: g,
        c,
        k,
        nodes_left: node_budget.unwrap_or(u64::MAX),
        best: None,
        best_cost: usize::MAX,
    };
    branch(&mut state, &SplitPlan::new())?;
    Ok(state.best)
}

// ---------------------------------------------------------------------------
// Certificate verification
// ---------------------------------------------------------------------------

/// A solution certificate: either a batched plan or an explicit sequence.
#[derive(Debug, Clone)]
pub enum Certificate {
    Plan(SplitPlan),
    Trace(SplitTrace),
}

impl Certificate {
    pub fn cost(&self) -> usize {
        match self {
            Certificate::Plan(p) => p.cost(),
            Certificate::Trace(t) => t.len(),
        }
    }
}

/// True iff the certificate is valid for `g`, costs at most `k`, respects
/// the mode (exclusive certificates only under `Exclusive`), and its
/// application is K_{1,c}-free. Malformed certificates are errors,
/// distinct from a valid-but-not-solving `false`.
pub fn verify_solution(
    g: &Graph,
    certificate: &Certificate,
    k: usize,
    c: usize,
    mode: SplitMode,
) -> Result<bool, OracleError> {
    let result = match certificate {
        Certificate::Plan(plan) => {
            plan.validate(g)?;
            apply_split_plan(g, plan)?.0
        }
        Certificate::Trace(trace) => {
            if mode == SplitMode::Exclusive
                && trace.steps.iter().any(|s| s.mode == SplitMode::Inclusive)
            {
                return Err(OracleError::ModeNotAllowed(mode));
            }
            apply_trace(g, trace)?
        }
    };
    Ok(certificate.cost() <= k && is_k1c_free(&result, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn star(leaves: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..=leaves as Vertex).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn degree5_graph() -> Graph {
        parse_graph("7 10\n0 1\n0 6\n1 2\n1 6\n2 3\n2 6\n3 4\n3 6\n4 5\n4 6\n").unwrap()
    }

    /// K_{2,3} plus the edge between the two degree-3 part vertices.
    fn k23_plus_e() -> Graph {
        parse_graph("5 7\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n").unwrap()
    }

    #[test]
    fn canonical_form_distinguishes_small_graphs() {
        let path = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let relabeled = parse_graph("3 2\n0 1\n0 2\n").unwrap();
        let triangle = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!(
            canonical_form(&path).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
        assert_ne!(
            canonical_form(&path).unwrap(),
            canonical_form(&triangle).unwrap()
        );
        assert!(graphs_isomorphic(&path, &relabeled).unwrap());
    }

    #[test]
    fn canonical_form_invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let n = rng.gen_range(2..9usize);
            let mut edges = Vec::new();
            for u in 0..n as Vertex {
                for v in (u + 1)..n as Vertex {
                    if rng.gen_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let mapped: Vec<(Vertex, Vertex)> = edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u as usize], perm[v as usize]);
                    (a.min(b), a.max(b))
                })
                .collect();
            let h = Graph::from_edges(n, &mapped).unwrap();
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }

    #[test]
    fn enumeration_counts_match_known_values() {
        // Non-isomorphic graph counts: 1, 2, 4, 11, 34, 156 for n = 1..6.
        let all = enumerate_graphs_up_to(6, |_| true);
        let mut by_n = [0usize; 7];
        for g in &all {
            by_n[g.n()] += 1;
        }
        assert_eq!(&by_n[1..], &[1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn enumeration_with_degree_filter() {
        let linear = enumerate_graphs_up_to(5, |g| g.max_degree() <= 2);
        assert!(linear.iter().all(|g| g.max_degree() <= 2));
        // Max-degree-2 graphs are disjoint unions of paths and cycles; on
        // 4 vertices: 4K1, K2+2K1, 2K2, P3+K1, P4, C3+K1, C4.
        let n4 = linear.iter().filter(|g| g.n() == 4).count();
        assert_eq!(n4, 7);
    }

    #[test]
    fn sequential_oracle_basics() {
        let triangle = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        let t = solve_exact_sequential(&triangle, 0, 3, SplitMode::Exclusive)
            .unwrap()
            .unwrap();
        assert!(t.is_empty());

        // K_{1,5} needs two splits.
        let k15 = star(5);
        assert!(solve_exact_sequential(&k15, 1, 3, SplitMode::Exclusive)
            .unwrap()
            .is_none());
        let t = solve_exact_sequential(&k15, 2, 3, SplitMode::Exclusive)
            .unwrap()
            .unwrap();
        assert_eq!(t.len(), 2);
        assert!(verify_solution(&k15, &Certificate::Trace(t), 2, 3, SplitMode::Exclusive).unwrap());
    }

    #[test]
    fn sequential_oracle_k23_plus_e() {
        let g = k23_plus_e();
        for mode in [SplitMode::Exclusive, SplitMode::Inclusive] {
            assert!(
                solve_exact_sequential(&g, 1, 3, mode).unwrap().is_none(),
                "{mode:?}"
            );
            let t = solve_exact_sequential(&g, 2, 3, mode).unwrap().unwrap();
            assert_eq!(t.len(), 2);
            assert!(verify_solution(&g, &Certificate::Trace(t), 2, 3, mode).unwrap());
        }
    }

    #[test]
    fn sequential_oracle_rejects_large_instances() {
        let g = star(11);
        assert_eq!(
            solve_exact_sequential(&g, 2, 3, SplitMode::Exclusive),
            Err(OracleError::TooLarge {
                n: 12,
                k: 2,
                limit: SEQUENTIAL_LIMIT
            })
        );
    }

    #[test]
    fn branching_solves_single_claw() {
        let g = star(3);
        let plan = solve_exact_branching(&g, 1, 3, None).unwrap().unwrap();
        assert_eq!(plan.cost(), 1);
        assert!(verify_solution(&g, &Certificate::Plan(plan), 1, 3, SplitMode::Exclusive).unwrap());
    }

    #[test]
    fn branching_on_degree5_graph_finds_cost_one() {
        let g = degree5_graph();
        let plan = solve_exact_branching(&g, 1, 3, None).unwrap().unwrap();
        assert_eq!(plan.cost(), 1);
        let (result, _) = apply_split_plan(&g, &plan).unwrap();
        assert!(is_k1c_free(&result, 3));
    }

    #[test]
    fn branching_detects_two_disjoint_claws_need_two() {
        // Claws at 0 and 4.
        let g = parse_graph("8 6\n0 1\n0 2\n0 3\n4 5\n4 6\n4 7\n").unwrap();
        assert!(solve_exact_branching(&g, 1, 3, None).unwrap().is_none());
        assert!(solve_exact_sequential(&g, 1, 3, SplitMode::Exclusive)
            .unwrap()
            .is_none());
        let plan = solve_exact_branching(&g, 2, 3, None).unwrap().unwrap();
        assert_eq!(plan.cost(), 2);
    }

    #[test]
    fn branching_node_budget_aborts() {
        let g = star(5);
        assert_eq!(
            solve_exact_branching(&g, 2, 3, Some(1)),
            Err(OracleError::BudgetExceeded)
        );
    }

    #[test]
    fn figure_style_bad_split_is_not_a_solution() {
        let g = degree5_graph();
        // Isolating p5 (= 4) creates a claw at p5.
        let mut bad = SplitPlan::new();
        bad.parts.insert(6, vec![vec![0, 1, 2, 3], vec![4]]);
        assert_eq!(
            verify_solution(&g, &Certificate::Plan(bad), 1, 3, SplitMode::Exclusive),
            Ok(false)
        );
        // Isolating p1 (= 0) solves it.
        let mut good = SplitPlan::new();
        good.parts.insert(6, vec![vec![1, 2, 3, 4], vec![0]]);
        assert_eq!(
            verify_solution(&g, &Certificate::Plan(good), 1, 3, SplitMode::Exclusive),
            Ok(true)
        );
    }

    #[test]
    fn verify_empty_plan_reduces_to_freeness() {
        let triangle = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        let claw = star(3);
        let empty = Certificate::Plan(SplitPlan::new());
        assert_eq!(
            verify_solution(&triangle, &empty, 0, 3, SplitMode::Exclusive),
            Ok(true)
        );
        assert_eq!(
            verify_solution(&claw, &empty, 0, 3, SplitMode::Exclusive),
            Ok(false)
        );
    }

    #[test]
    fn verify_rejects_malformed_and_mode_mismatch() {
        let g = star(3);
        let mut malformed = SplitPlan::new();
        malformed.parts.insert(0, vec![vec![1], vec![1, 2, 3]]);
        assert!(matches!(
            verify_solution(&g, &Certificate::Plan(malformed), 3, 3, SplitMode::Exclusive),
            Err(OracleError::Malformed(_))
        ));
        let trace = SplitTrace {
            steps: vec![SplitStep {
                vertex: 0,
                x: vec![1, 2],
                y: vec![2, 3],
                mode: SplitMode::Inclusive,
            }],
        };
        assert!(matches!(
            verify_solution(&g, &Certificate::Trace(trace), 3, 3, SplitMode::Exclusive),
            Err(OracleError::ModeNotAllowed(SplitMode::Exclusive))
        ));
    }

    #[test]
    fn monotone_in_k_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let n = rng.gen_range(3..7usize);
            let mut edges = Vec::new();
            for u in 0..n as Vertex {
                for v in (u + 1)..n as Vertex {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            for k in 0..2usize {
                let s_k = solve_exact_sequential(&g, k, 3, SplitMode::Exclusive).unwrap();
                let s_k1 = solve_exact_sequential(&g, k + 1, 3, SplitMode::Exclusive).unwrap();
                if let Some(t) = &s_k {
                    let t1 = s_k1.as_ref().expect("solvable at k implies at k+1");
                    assert!(t1.len() <= t.len());
                }
            }
        }
    }

    #[test]
    fn deleting_vertices_never_increases_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let opt = |g: &Graph| -> Option<usize> {
            for k in 0..=3usize {
                if g.n() + k > SEQUENTIAL_LIMIT {
                    break;
                }
                if let Some(t) = solve_exact_sequential(g, k, 3, SplitMode::Exclusive).unwrap() {
                    return Some(t.len());
                }
            }
            None
        };
        for _ in 0..25 {
            let n = rng.gen_range(4..7usize);
            let mut edges = Vec::new();
            for u in 0..n as Vertex {
                for v in (u + 1)..n as Vertex {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let Some(full) = opt(&g) else { continue };
            let v = rng.gen_range(0..n) as Vertex;
            let (h, _) = g.delete_vertices(&[v]);
            if let Some(sub) = opt(&h) {
                assert!(sub <= full, "deleting {v} raised optimum");
            } else {
                panic!("subgraph unsolvable but supergraph solvable");
            }
        }
    }
}
