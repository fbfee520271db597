//! Maximum bipartite matching via augmenting paths with layered (BFS)
//! phases. Deterministic: vertices are processed in ascending identifier
//! order, so equal-size matchings always come out the same.

use std::collections::VecDeque;

use crate::graph::Vertex;

/// Maximum-cardinality matching between `left` and `right`, given the
/// edges joining them. Edges touching vertices outside the two sides are
/// ignored. Returns (left, right) pairs sorted by left identifier.
pub fn max_bipartite_matching(
    left: &[Vertex],
    right: &[Vertex],
    edges: &[(Vertex, Vertex)],
) -> Vec<(Vertex, Vertex)> {
    let mut left: Vec<Vertex> = left.to_vec();
    let mut right: Vec<Vertex> = right.to_vec();
    left.sort_unstable();
    right.sort_unstable();
    let lidx = |v: Vertex| left.binary_search(&v).ok();
    let ridx = |v: Vertex| right.binary_search(&v).ok();

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left.len()];
    for &(l, r) in edges {
        if let (Some(li), Some(ri)) = (lidx(l), ridx(r)) {
            adj[li].push(ri);
        }
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
        nbrs.dedup();
    }

    const FREE: usize = usize::MAX;
    let mut match_l = vec![FREE; left.len()];
    let mut match_r = vec![FREE; right.len()];

    loop {
        // BFS from free left vertices to build layers.
        let mut dist = vec![FREE; left.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (li, &m) in match_l.iter().enumerate() {
            if m == FREE {
                dist[li] = 0;
                queue.push_back(li);
            }
        }
        let mut reachable_free_right = false;
        while let Some(li) = queue.pop_front() {
            for &ri in &adj[li] {
                match match_r[ri] {
                    FREE => reachable_free_right = true,
                    next => {
                        if dist[next] == FREE {
                            dist[next] = dist[li] + 1;
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        if !reachable_free_right {
            break;
        }
        // DFS along layered edges, ascending order.
        fn augment(
            li: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            match_l: &mut [usize],
            match_r: &mut [usize],
        ) -> bool {
            const FREE: usize = usize::MAX;
            let d = std::mem::replace(&mut dist[li], FREE);
            for &ri in &adj[li] {
                let next = match_r[ri];
                let ok = next == FREE
                    || (dist[next] == d + 1 && augment(next, adj, dist, match_l, match_r));
                if ok {
                    match_l[li] = ri;
                    match_r[ri] = li;
                    return true;
                }
            }
            false
        }
        let mut advanced = false;
        for li in 0..left.len() {
            if match_l[li] == FREE && dist[li] == 0 {
                advanced |= augment(li, &adj, &mut dist, &mut match_l, &mut match_r);
            }
        }
        if !advanced {
            break;
        }
    }

    match_l
        .iter()
        .enumerate()
        .filter(|&(_, &ri)| ri != FREE)
        .map(|(li, &ri)| (left[li], right[ri]))
        .collect()
}
