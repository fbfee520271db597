//! Vertex splitting into K_{1,c}-free graphs.
//!
//! A vertex split replaces `v` by two copies whose neighborhoods cover
//! N(v); it is exclusive when the copies' neighborhoods are disjoint.
//! This crate decides and certifies whether at most `k` splits can make a
//! graph K_{1,c}-free:
//!
//! - [`graph`]: graph representation, edge-list I/O, DOT export;
//! - [`split`]: split semantics, batched plans, sequential traces;
//! - [`detect`]: K_{1,c} center detection and neighborhood clique
//!   partitions;
//! - [`degree4`]: optimal polynomial-time solver for maximum degree four;
//! - [`kernel`]: the cubic-order kernelization;
//! - [`exact`]: exhaustive oracles and small-graph machinery;
//! - [`reduce`]: the hitting-set hardness construction and its witnesses;
//! - [`gen`]: seeded random instance generation.

pub mod degree4;
pub mod detect;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod matching;
pub mod reduce;
pub mod split;

pub use graph::{Graph, Vertex};
pub use split::{SplitMode, SplitPlan, SplitTrace};
