//! Kernelization for K_{1,c}-free vertex splitting: reduce an instance
//! (G, k) to an equivalent one with at most (c-1)k^3 + (c-1)k^2 + k
//! vertices, or report a NO-instance.
//!
//! Rules, applied to a fixed point with centers recomputed after every
//! deletion:
//!
//! - rule 0: more than k centers is a NO-instance (every center needs at
//!   least one split);
//! - rule 1: a vertex whose closed neighborhood contains no center is
//!   irrelevant and deleted;
//! - rule 2: a center whose neighborhood splits into more than
//!   (c-1)(k+1) greedy maximal cliques is a NO-instance. The paper-strict
//!   mode trusts the greedy clique count; the verified mode instead
//!   certifies an independent set of (c-1)(k+1)+1 neighbors, which is the
//!   literal NO-witness (one representative per greedy clique need not be
//!   independent);
//! - rule 3 (crown): a clique of more than k non-centers keeps only a
//!   maximum matching into the adjacent centers; the rest is deleted.

use thiserror::Error;

use crate::detect::{find_centers, greedy_clique_partition, neighborhood_has_independent_set};
use crate::graph::{DeletionMap, Graph, Vertex};
use crate::matching::max_bipartite_matching;

/// Work cap for one verified-mode independent-set query.
const VERIFIED_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    PaperStrict,
    Verified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVerdict {
    Reduced,
    NoInstance,
}

/// One rule application, in original vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleEvent {
    Rule0 { centers: usize, k: usize },
    Rule1 { deleted: Vec<Vertex> },
    Rule2Strict { vertex: Vertex, t: usize, bound: usize },
    Rule2Verified { vertex: Vertex, independent: usize, bound: usize },
    Rule2Downgraded { vertex: Vertex },
    Rule3 {
        vertex: Vertex,
        clique: Vec<Vertex>,
        matched: usize,
        deleted: Vec<Vertex>,
    },
}

fn join_ids(ids: &[Vertex]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl RuleEvent {
    /// Stable one-line trace format.
    pub fn trace_line(&self) -> String {
        match self {
            RuleEvent::Rule0 { centers, k } => {
                format!("rule0 centers={centers} k={k} → NO")
            }
            RuleEvent::Rule1 { deleted } => format!("rule1 deleted={}", join_ids(deleted)),
            RuleEvent::Rule2Strict { vertex, t, bound } => {
                format!("rule2 v={vertex} t={t} bound={bound} → NO")
            }
            RuleEvent::Rule2Verified {
                vertex,
                independent,
                bound,
            } => format!("rule2-verified v={vertex} s={independent} bound={bound} → NO"),
            RuleEvent::Rule2Downgraded { vertex } => {
                format!("rule2-verified v={vertex} budget-exceeded → strict")
            }
            RuleEvent::Rule3 {
                vertex,
                clique,
                matched,
                deleted,
            } => format!(
                "rule3 v={vertex} clique={} matched={matched} deleted={}",
                join_ids(clique),
                join_ids(deleted)
            ),
        }
    }
}

/// Kernelization result. `graph` is the reduced instance (dense
/// identifiers); `provenance` maps original identifiers to reduced ones;
/// `fired` lists rule applications in original identifiers.
#[derive(Debug, Clone)]
pub struct KernelOutcome {
    pub verdict: KernelVerdict,
    pub graph: Graph,
    pub k: usize,
    pub c: usize,
    pub fired: Vec<RuleEvent>,
    pub provenance: DeletionMap,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("crown set is not a clique (vertices {u}, {v} non-adjacent)")]
    NotAClique { u: Vertex, v: Vertex },
    #[error("crown set contains the center {vertex}")]
    ContainsCenter { vertex: Vertex },
}

/// Vertex bound of a reduced instance: (c-1)k^3 + (c-1)k^2 + k.
pub fn kernel_size_bound(k: usize, c: usize) -> usize {
    (c - 1) * k * k * k + (c - 1) * k * k + k
}

/// Rule 0: a NO-instance when the centers outnumber the budget.
pub fn rule0_center_budget(g: &Graph, k: usize, c: usize) -> bool {
    find_centers(g, c).centers.len() > k
}

/// Rule 1: deletes every vertex whose closed neighborhood contains no
/// center, in one batch. Returns the new graph, the deleted originals,
/// and the renumbering.
pub fn rule1_irrelevant_vertices(g: &Graph, c: usize) -> (Graph, Vec<Vertex>, DeletionMap) {
    let centers = find_centers(g, c).centers;
    let mut is_center = vec![false; g.n()];
    for &v in &centers {
        is_center[v as usize] = true;
    }
    let mut delete = Vec::new();
    for v in 0..g.n() as Vertex {
        let keep = is_center[v as usize]
            || g.neighbors(v).iter().any(|&w| is_center[w as usize]);
        if !keep {
            delete.push(v);
        }
    }
    let (h, map) = g.delete_vertices(&delete);
    (h, delete, map)
}

/// Rule 2 for one center: `Ok(true)` means NO-instance. The verified
/// mode may run out of budget, which the caller must handle by falling
/// back to the strict test.
pub fn rule2_partition_bound(
    g: &Graph,
    v: Vertex,
    k: usize,
    c: usize,
    mode: KernelMode,
) -> Result<bool, crate::detect::BudgetExceeded> {
    let bound = (c - 1) * (k + 1);
    match mode {
        KernelMode::PaperStrict => Ok(greedy_clique_partition(g, v).len() > bound),
        KernelMode::Verified => neighborhood_has_independent_set(g, v, bound + 1, VERIFIED_BUDGET),
    }
}

/// Rule 3 (crown): `h` must be a clique of non-centers with more than `k`
/// members. Keeps the vertices matched into the adjacent centers and
/// deletes the rest.
pub fn rule3_crown(
    g: &Graph,
    h: &[Vertex],
    centers: &[Vertex],
    k: usize,
) -> Result<(Graph, Vec<Vertex>, DeletionMap), KernelError> {
    for (i, &u) in h.iter().enumerate() {
        for &v in &h[i + 1..] {
            if !g.has_edge(u, v) {
                return Err(KernelError::NotAClique { u, v });
            }
        }
    }
    for &u in h {
        if centers.binary_search(&u).is_ok() {
            return Err(KernelError::ContainsCenter { vertex: u });
        }
    }
    debug_assert!(h.len() > k, "crown rule applies to cliques larger than k");
    let boundary: Vec<Vertex> = centers
        .iter()
        .copied()
        .filter(|&cv| h.iter().any(|&hv| g.has_edge(hv, cv)))
        .collect();
    let mut edges = Vec::new();
    for &hv in h {
        for &cv in &boundary {
            if g.has_edge(hv, cv) {
                edges.push((hv, cv));
            }
        }
    }
    let matching = max_bipartite_matching(h, &boundary, &edges);
    let saturated: Vec<Vertex> = matching.iter().map(|&(hv, _)| hv).collect();
    let delete: Vec<Vertex> = h
        .iter()
        .copied()
        .filter(|hv| !saturated.contains(hv))
        .collect();
    let (graph, map) = g.delete_vertices(&delete);
    Ok((graph, delete, map))
}

/// Runs the kernelization to a fixed point.
pub fn kernelize(g: &Graph, k: usize, c: usize, mode: KernelMode) -> KernelOutcome {
    assert!(c >= 3);
    let mut cur = g.clone();
    let mut prov = DeletionMap::identity(g.n());
    let mut fired: Vec<RuleEvent> = Vec::new();
    // Reduced identifier -> original identifier, for event reporting.
    let mut to_original: Vec<Vertex> = (0..g.n() as Vertex).collect();

    loop {
        let report = find_centers(&cur, c);
        if report.centers.len() > k {
            fired.push(RuleEvent::Rule0 {
                centers: report.centers.len(),
                k,
            });
            return KernelOutcome {
                verdict: KernelVerdict::NoInstance,
                graph: cur,
                k,
                c,
                fired,
                provenance: prov,
            };
        }

        let (g1, deleted, map) = rule1_irrelevant_vertices(&cur, c);
        if !deleted.is_empty() {
            fired.push(RuleEvent::Rule1 {
                deleted: deleted.iter().map(|&v| to_original[v as usize]).collect(),
            });
            to_original = map
                .new_to_old()
                .iter()
                .map(|&v| to_original[v as usize])
                .collect();
            cur = g1;
            prov = prov.then(&map);
            continue;
        }

        let mut deleted_this_pass = false;
        for &v in &report.centers {
            let no_instance = match rule2_partition_bound(&cur, v, k, c, mode) {
                Ok(res) => {
                    if res {
                        let bound = (c - 1) * (k + 1);
                        match mode {
                            KernelMode::PaperStrict => fired.push(RuleEvent::Rule2Strict {
                                vertex: to_original[v as usize],
                                t: greedy_clique_partition(&cur, v).len(),
                                bound,
                            }),
                            KernelMode::Verified => fired.push(RuleEvent::Rule2Verified {
                                vertex: to_original[v as usize],
                                independent: bound + 1,
                                bound,
                            }),
                        }
                    }
                    res
                }
                Err(_) => {
                    // Verified query blew its budget; fall back to the
                    // strict test and record the downgrade.
                    fired.push(RuleEvent::Rule2Downgraded {
                        vertex: to_original[v as usize],
                    });
                    let res = rule2_partition_bound(&cur, v, k, c, KernelMode::PaperStrict)
                        .expect("strict mode needs no budget");
                    if res {
                        fired.push(RuleEvent::Rule2Strict {
                            vertex: to_original[v as usize],
                            t: greedy_clique_partition(&cur, v).len(),
                            bound: (c - 1) * (k + 1),
                        });
                    }
                    res
                }
            };
            if no_instance {
                return KernelOutcome {
                    verdict: KernelVerdict::NoInstance,
                    graph: cur,
                    k,
                    c,
                    fired,
                    provenance: prov,
                };
            }

            // Crown rule on each greedy clique with more than k non-centers.
            for clique in greedy_clique_partition(&cur, v) {
                let h: Vec<Vertex> = clique
                    .iter()
                    .copied()
                    .filter(|u| report.centers.binary_search(u).is_err())
                    .collect();
                if h.len() <= k {
                    continue;
                }
                let (g3, deleted, map) = rule3_crown(&cur, &h, &report.centers, k)
                    .expect("greedy blocks are cliques of non-centers");
                if deleted.is_empty() {
                    continue;
                }
                fired.push(RuleEvent::Rule3 {
                    vertex: to_original[v as usize],
                    clique: h.iter().map(|&u| to_original[u as usize]).collect(),
                    matched: h.len() - deleted.len(),
                    deleted: deleted.iter().map(|&u| to_original[u as usize]).collect(),
                });
                to_original = map
                    .new_to_old()
                    .iter()
                    .map(|&u| to_original[u as usize])
                    .collect();
                cur = g3;
                prov = prov.then(&map);
                deleted_this_pass = true;
                break;
            }
            if deleted_this_pass {
                break;
            }
        }
        if !deleted_this_pass {
            break;
        }
    }

    KernelOutcome {
        verdict: KernelVerdict::Reduced,
        graph: cur,
        k,
        c,
        fired,
        provenance: prov,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn star(leaves: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..=leaves as Vertex).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn two_disjoint_claws() -> Graph {
        parse_graph("8 6\n0 1\n0 2\n0 3\n4 5\n4 6\n4 7\n").unwrap()
    }

    #[test]
    fn rule0_counts_centers_against_budget() {
        assert!(rule0_center_budget(&two_disjoint_claws(), 1, 3));
        assert!(!rule0_center_budget(&star(3), 1, 3));
        let triangle = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        assert!(!rule0_center_budget(&triangle, 0, 3));
    }

    #[test]
    fn rule1_deletes_center_free_closed_neighborhoods() {
        let p3 = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let (h, deleted, _) = rule1_irrelevant_vertices(&p3, 3);
        assert_eq!(h.n(), 0);
        assert_eq!(deleted, vec![0, 1, 2]);

        let claw = star(3);
        let (h, deleted, _) = rule1_irrelevant_vertices(&claw, 3);
        assert_eq!(h.n(), 4);
        assert!(deleted.is_empty());

        // Claw plus a far-away triangle: the triangle goes.
        let g = parse_graph("7 6\n0 1\n0 2\n0 3\n4 5\n4 6\n5 6\n").unwrap();
        let (h, deleted, map) = rule1_irrelevant_vertices(&g, 3);
        assert_eq!(deleted, vec![4, 5, 6]);
        assert_eq!(h.n(), 4);
        assert_eq!(map.old_to_new[0], Some(0));
        assert_eq!(map.old_to_new[5], None);
    }

    #[test]
    fn rule2_thresholds() {
        // K_{1,5} center, k = 1, c = 3: five singleton cliques and an
        // independent set of five, both beyond the bound of four.
        let k15 = star(5);
        assert_eq!(
            rule2_partition_bound(&k15, 0, 1, 3, KernelMode::PaperStrict),
            Ok(true)
        );
        assert_eq!(
            rule2_partition_bound(&k15, 0, 1, 3, KernelMode::Verified),
            Ok(true)
        );
        // K_{1,4}: t = 4 is within bound.
        let k14 = star(4);
        assert_eq!(
            rule2_partition_bound(&k14, 0, 1, 3, KernelMode::PaperStrict),
            Ok(false)
        );
        assert_eq!(
            rule2_partition_bound(&k14, 0, 1, 3, KernelMode::Verified),
            Ok(false)
        );
        // A clique neighborhood passes for every k.
        let wheel = parse_graph("5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
        assert_eq!(
            rule2_partition_bound(&wheel, 4, 0, 3, KernelMode::PaperStrict),
            Ok(false)
        );
    }

    #[test]
    fn rule3_matching_keeps_saturated_vertices() {
        // Clique H = {1,2,3}; center 0 adjacent to 1 only; 0's claw is
        // elsewhere (4, 5, 6).
        let g = parse_graph(
            "7 7\n0 1\n0 4\n0 5\n0 6\n1 2\n1 3\n2 3\n",
        )
        .unwrap();
        let centers = vec![0];
        let (h, deleted, _) = rule3_crown(&g, &[1, 2, 3], &centers, 1).unwrap();
        assert_eq!(deleted, vec![2, 3]);
        assert_eq!(h.n(), 5);
    }

    #[test]
    fn rule3_without_centers_deletes_everything() {
        let k3 = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        let (h, deleted, _) = rule3_crown(&k3, &[0, 1, 2], &[], 2).unwrap();
        assert_eq!(deleted, vec![0, 1, 2]);
        assert_eq!(h.n(), 0);
    }

    #[test]
    fn rule3_perfect_matching_deletes_nothing() {
        // H = {0,1} clique; centers 2,3 with complete adjacency to H.
        let g = parse_graph("4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n").unwrap();
        let (h, deleted, _) = rule3_crown(&g, &[0, 1], &[2, 3], 1).unwrap();
        assert!(deleted.is_empty());
        assert_eq!(h.n(), 4);
    }

    #[test]
    fn rule3_rejects_bad_crowns() {
        let g = parse_graph("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(
            rule3_crown(&g, &[0, 2], &[], 1),
            Err(KernelError::NotAClique { u: 0, v: 2 })
        );
        assert_eq!(
            rule3_crown(&g, &[0, 1], &[0], 1),
            Err(KernelError::ContainsCenter { vertex: 0 })
        );
    }

    #[test]
    fn kernelize_claw_free_empties_the_graph() {
        let triangle = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        for k in 0..3 {
            let out = kernelize(&triangle, k, 3, KernelMode::Verified);
            assert_eq!(out.verdict, KernelVerdict::Reduced);
            assert_eq!(out.graph.n(), 0);
            assert_eq!(out.k, k);
        }
    }

    #[test]
    fn kernelize_k15_with_budget_one_is_no() {
        let out = kernelize(&star(5), 1, 3, KernelMode::PaperStrict);
        assert_eq!(out.verdict, KernelVerdict::NoInstance);
        assert!(matches!(out.fired.last(), Some(RuleEvent::Rule2Strict { .. })));
        let out = kernelize(&star(5), 1, 3, KernelMode::Verified);
        assert_eq!(out.verdict, KernelVerdict::NoInstance);
        assert!(matches!(out.fired.last(), Some(RuleEvent::Rule2Verified { .. })));
    }

    #[test]
    fn kernelize_two_claws_with_budget_one_is_no_by_rule0() {
        let out = kernelize(&two_disjoint_claws(), 1, 3, KernelMode::Verified);
        assert_eq!(out.verdict, KernelVerdict::NoInstance);
        assert_eq!(
            out.fired,
            vec![RuleEvent::Rule0 { centers: 2, k: 1 }]
        );
    }

    #[test]
    fn kernelize_respects_size_bound_and_idempotence() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..60 {
            let n = rng.gen_range(4..16);
            let p = rng.gen_range(0.15..0.7);
            let mut edges = Vec::new();
            for u in 0..n as Vertex {
                for v in (u + 1)..n as Vertex {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let k = rng.gen_range(0..4);
            for mode in [KernelMode::PaperStrict, KernelMode::Verified] {
                let out = kernelize(&g, k, 3, mode);
                if out.verdict == KernelVerdict::Reduced {
                    assert!(
                        out.graph.n() <= kernel_size_bound(k, 3),
                        "n = {} exceeds bound {} for k = {k}",
                        out.graph.n(),
                        kernel_size_bound(k, 3)
                    );
                    // Idempotence: re-kernelizing fires nothing.
                    let again = kernelize(&out.graph, k, 3, mode);
                    assert_eq!(again.verdict, KernelVerdict::Reduced);
                    assert!(again.fired.is_empty());
                    assert_eq!(again.graph, out.graph);
                }
            }
        }
    }

    #[test]
    fn trace_lines_are_stable() {
        assert_eq!(
            RuleEvent::Rule2Strict { vertex: 17, t: 9, bound: 8 }.trace_line(),
            "rule2 v=17 t=9 bound=8 → NO"
        );
        assert_eq!(
            RuleEvent::Rule1 { deleted: vec![3, 7] }.trace_line(),
            "rule1 deleted=3,7"
        );
        assert_eq!(
            RuleEvent::Rule3 {
                vertex: 4,
                clique: vec![1, 2, 3],
                matched: 1,
                deleted: vec![2, 3]
            }
            .trace_line(),
            "rule3 v=4 clique=1,2,3 matched=1 deleted=2,3"
        );
    }
}
