//! Recognition of K_{1,c} centers: a vertex is a center exactly when its
//! neighborhood contains c pairwise non-adjacent vertices. Also hosts the
//! greedy maximal-clique partition of a neighborhood used by the
//! kernelizer.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Centers of induced K_{1,c} subgraphs, with one witness each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterReport {
    /// Ascending center identifiers.
    pub centers: Vec<Vertex>,
    /// Center -> lexicographically least independent c-subset of its
    /// neighborhood.
    pub witness: BTreeMap<Vertex, Vec<Vertex>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("independent-set search budget exceeded")]
pub struct BudgetExceeded;

/// Lexicographically least independent `c`-subset of N(v), if any.
///
/// Only neighborhoods of degree >= c can host a witness, so callers may
/// skip smaller vertices; this function handles them anyway.
pub fn center_witness(g: &Graph, v: Vertex, c: usize) -> Option<Vec<Vertex>> {
    let nbrs = g.neighbors(v);
    if nbrs.len() < c {
        return None;
    }
    let mut chosen: Vec<Vertex> = Vec::with_capacity(c);
    fn extend(g: &Graph, nbrs: &[Vertex], from: usize, chosen: &mut Vec<Vertex>, c: usize) -> bool {
        if chosen.len() == c {
            return true;
        }
        for i in from..nbrs.len() {
            if nbrs.len() - i < c - chosen.len() {
                return false;
            }
            let w = nbrs[i];
            if chosen.iter().all(|&u| !g.has_edge(u, w)) {
                chosen.push(w);
                if extend(g, nbrs, i + 1, chosen, c) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if extend(g, nbrs, 0, &mut chosen, c) {
        Some(chosen)
    } else {
        None
    }
}

/// All K_{1,c} centers of `g`, deterministically witnessed.
pub fn find_centers(g: &Graph, c: usize) -> CenterReport {
    assert!(c >= 3, "K_{{1,c}} detection requires c >= 3");
    let mut centers = Vec::new();
    let mut witness = BTreeMap::new();
    for v in 0..g.n() as Vertex {
        if let Some(w) = center_witness(g, v, c) {
            centers.push(v);
            witness.insert(v, w);
        }
    }
    CenterReport { centers, witness }
}

/// True iff `g` has no induced K_{1,c}.
pub fn is_k1c_free(g: &Graph, c: usize) -> bool {
    assert!(c >= 3, "K_{{1,c}} detection requires c >= 3");
    (0..g.n() as Vertex).all(|v| g.degree(v) < c || center_witness(g, v, c).is_none())
}

/// Decides whether G[N(v)] contains an independent set of size `s` by
/// exhaustive search with pruning. `budget` caps the number of search
/// nodes; exceeding it is reported separately from a negative answer.
pub fn neighborhood_has_independent_set(
    g: &Graph,
    v: Vertex,
    s: usize,
    budget: u64,
) -> Result<bool, BudgetExceeded> {
    assert!(s >= 1);
    fn rec(
        g: &Graph,
        candidates: &[Vertex],
        need: usize,
        budget: &mut u64,
    ) -> Result<bool, BudgetExceeded> {
        if need == 0 {
            return Ok(true);
        }
        if candidates.len() < need {
            return Ok(false);
        }
        if *budget == 0 {
            return Err(BudgetExceeded);
        }
        *budget -= 1;
        let first = candidates[0];
        // Include `first`.
        let rest: Vec<Vertex> = candidates[1..]
            .iter()
            .copied()
            .filter(|&w| !g.has_edge(first, w))
            .collect();
        if rec(g, &rest, need - 1, budget)? {
            return Ok(true);
        }
        // Exclude `first`.
        rec(g, &candidates[1..], need, budget)
    }
    let mut budget = budget;
    rec(g, g.neighbors(v), s, &mut budget)
}

/// Greedily partitions N(v) into disjoint cliques, each maximal within the
/// not-yet-covered remainder of G[N(v)]. Deterministic: each clique is
/// seeded with the smallest uncovered identifier and extended by the
/// smallest admissible one.
pub fn greedy_clique_partition(g: &Graph, v: Vertex) -> Vec<Vec<Vertex>> {
    let nbrs = g.neighbors(v);
    let mut covered = vec![false; nbrs.len()];
    let mut cliques = Vec::new();
    for seed_idx in 0..nbrs.len() {
        if covered[seed_idx] {
            continue;
        }
        covered[seed_idx] = true;
        let mut clique = vec![nbrs[seed_idx]];
        for (idx, &w) in nbrs.iter().enumerate().skip(seed_idx + 1) {
            if covered[idx] {
                continue;
            }
            if clique.iter().all(|&u| g.has_edge(u, w)) {
                covered[idx] = true;
                clique.push(w);
            }
        }
        cliques.push(clique);
    }
    cliques
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::split::{apply_single_split, SplitMode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k4() -> Graph {
        parse_graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap()
    }

    /// Path p1..p5 (0..4), pendant x = 5 on p5, v = 6 adjacent to p1..p5.
    fn degree5_graph() -> Graph {
        parse_graph("7 10\n0 1\n0 6\n1 2\n1 6\n2 3\n2 6\n3 4\n3 6\n4 5\n4 6\n").unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn brute_force_centers(g: &Graph, c: usize) -> Vec<Vertex> {
        let mut out = Vec::new();
        'outer: for v in 0..g.n() as Vertex {
            let nbrs = g.neighbors(v);
            let mut subset = vec![0usize; c];
            fn combos(
                g: &Graph,
                nbrs: &[Vertex],
                subset: &mut Vec<usize>,
                pos: usize,
                from: usize,
            ) -> bool {
                if pos == subset.len() {
                    let set: Vec<Vertex> = subset.iter().map(|&i| nbrs[i]).collect();
                    return g.is_independent(&set);
                }
                for i in from..nbrs.len() {
                    subset[pos] = i;
                    if combos(g, nbrs, subset, pos + 1, i + 1) {
                        return true;
                    }
                }
                false
            }
            if nbrs.len() >= c && combos(g, nbrs, &mut subset, 0, 0) {
                out.push(v);
                continue 'outer;
            }
        }
        out
    }

    #[test]
    fn claw_center_detected() {
        let g = parse_graph("4 3\n0 1\n0 2\n0 3\n").unwrap();
        let rep = find_centers(&g, 3);
        assert_eq!(rep.centers, vec![0]);
        assert_eq!(rep.witness[&0], vec![1, 2, 3]);
    }

    #[test]
    fn degree5_graph_has_single_center() {
        let rep = find_centers(&degree5_graph(), 3);
        assert_eq!(rep.centers, vec![6]);
        assert_eq!(rep.witness[&6], vec![0, 2, 4]);
    }

    #[test]
    fn clique_has_no_centers() {
        assert!(find_centers(&k4(), 3).centers.is_empty());
        assert!(is_k1c_free(&k4(), 3));
    }

    #[test]
    fn k1c_freeness_depends_on_c() {
        let k14 = parse_graph("5 4\n0 1\n0 2\n0 3\n0 4\n").unwrap();
        assert!(!is_k1c_free(&k14, 3));
        assert!(!is_k1c_free(&k14, 4));
        assert!(is_k1c_free(&k14, 5));
        let triangle = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        assert!(is_k1c_free(&triangle, 3));
    }

    #[test]
    fn independent_set_queries() {
        let k15 = parse_graph("6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n").unwrap();
        assert_eq!(neighborhood_has_independent_set(&k15, 0, 5, 1 << 20), Ok(true));
        assert_eq!(neighborhood_has_independent_set(&k4(), 0, 2, 1 << 20), Ok(false));
        assert_eq!(
            neighborhood_has_independent_set(&degree5_graph(), 6, 3, 1 << 20),
            Ok(true)
        );
    }

    #[test]
    fn independent_set_budget_aborts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_graph(&mut rng, 30, 0.5);
        let v = (0..30u32).max_by_key(|&v| g.degree(v)).unwrap();
        assert_eq!(
            neighborhood_has_independent_set(&g, v, g.degree(v), 1),
            Err(BudgetExceeded)
        );
    }

    #[test]
    fn greedy_partition_of_induced_path() {
        // v = 4 adjacent to 0,1,2,3 which induce the path 0-1-2-3.
        let g = parse_graph("5 7\n0 1\n0 4\n1 2\n1 4\n2 3\n2 4\n3 4\n").unwrap();
        assert_eq!(greedy_clique_partition(&g, 4), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn greedy_partition_of_clique_and_independent() {
        // v = 4 joined to all of K4.
        let g =
            parse_graph("5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
        assert_eq!(greedy_clique_partition(&g, 4), vec![vec![0, 1, 2, 3]]);
        let k15 = parse_graph("6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n").unwrap();
        assert_eq!(greedy_clique_partition(&k15, 0).len(), 5);
    }

    #[test]
    fn greedy_partition_blocks_are_maximal_disjoint_cliques() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(4..12);
            let g = random_graph(&mut rng, n, 0.4);
            for v in 0..n as Vertex {
                let parts = greedy_clique_partition(&g, v);
                let mut covered: Vec<Vertex> = parts.concat();
                covered.sort_unstable();
                assert_eq!(covered, g.neighbors(v));
                let mut remaining: Vec<Vertex> = g.neighbors(v).to_vec();
                for clique in &parts {
                    assert!(g.is_clique(clique));
                    // Maximal within the residual at extraction time.
                    for &w in &remaining {
                        if !clique.contains(&w) {
                            assert!(
                                !clique.iter().all(|&u| g.has_edge(u, w)),
                                "clique {clique:?} extendable by {w} in residual"
                            );
                        }
                    }
                    remaining.retain(|w| !clique.contains(w));
                }
            }
        }
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..120 {
            let n = rng.gen_range(1..12);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            for c in 3..=5 {
                let rep = find_centers(&g, c);
                assert_eq!(rep.centers, brute_force_centers(&g, c));
                for (v, w) in &rep.witness {
                    assert_eq!(w.len(), c);
                    assert!(g.is_independent(w));
                    assert!(w.iter().all(|&u| g.has_edge(*v, u)));
                }
            }
        }
    }

    /// A split at any vertex other than a claw's center keeps that claw
    /// intact (its leaves may be renamed to copies).
    #[test]
    fn claw_survives_splits_at_other_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(4..8);
            let g = random_graph(&mut rng, n, 0.45);
            let report = find_centers(&g, 3);
            for (&center, leaves) in &report.witness {
                for u in 0..n as Vertex {
                    if u == center || g.degree(u) < 2 {
                        continue;
                    }
                    // One deterministic bipartition and one inclusive split.
                    let nbrs = g.neighbors(u);
                    let x = vec![nbrs[0]];
                    let y: Vec<Vertex> = nbrs[1..].to_vec();
                    for mode in [SplitMode::Exclusive, SplitMode::Inclusive] {
                        let s = apply_single_split(&g, u, &x, &y, mode).unwrap();
                        // Image of the claw: center unchanged; a leaf w != u
                        // stays w, leaf u becomes the copy adjacent to the center.
                        let image: Vec<Vertex> = leaves
                            .iter()
                            .map(|&w| {
                                if w != u {
                                    w
                                } else if s.graph.has_edge(center, s.v1) {
                                    s.v1
                                } else {
                                    s.v2
                                }
                            })
                            .collect();
                        assert!(image.iter().all(|&w| s.graph.has_edge(center, w)));
                        assert!(s.graph.is_independent(&image));
                    }
                }
            }
        }
    }

    /// A claw has at most one leaf in any clique; each greedy-partition
    /// block is a clique, so witnesses meet each block at most once.
    #[test]
    fn claw_leaves_meet_cliques_at_most_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..80 {
            let n = rng.gen_range(4..10);
            let g = random_graph(&mut rng, n, 0.5);
            let report = find_centers(&g, 3);
            for leaves in report.witness.values() {
                for v in 0..n as Vertex {
                    for clique in greedy_clique_partition(&g, v) {
                        let hits = leaves.iter().filter(|w| clique.contains(w)).count();
                        assert!(hits <= 1);
                    }
                }
            }
        }
    }
}
