//! Seeded random graph generation. No ambient randomness: identical
//! arguments always produce identical graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("edge probability {p} outside [0, 1]")]
    BadProbability { p: f64 },
}

/// G(n, p): every pair is an edge independently with probability `p`.
pub fn gen_random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadProbability { p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("generated pairs are simple"))
}

/// Random graph of maximum degree at most `max_degree`: candidate pairs
/// are visited in a seeded random order and kept with probability `p`
/// unless they would violate the degree cap.
pub fn gen_random_max_degree(
    n: usize,
    max_degree: usize,
    p: f64,
    seed: u64,
) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadProbability { p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if degree[u as usize] >= max_degree || degree[v as usize] >= max_degree {
            continue;
        }
        if rng.gen_bool(p) {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("generated pairs are simple"))
}
