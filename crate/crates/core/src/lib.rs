//! Cliques in uniform hypergraphs with forbidden complete partite blowups.
//!
//! The crate is organized as
//! - [`hypercore`]: hypergraph values, blowups, shadows, co-neighborhoods;
//! - [`counting`]: clique enumeration, subgraph containment, copy counts and
//!   the exponent arithmetic of the known bounds;
//! - [`extremal`]: exact and heuristic values of `ex(n, T, F)` with a witness cache;
//! - [`constructions`]: lower-bound constructions with certificates;
//! - [`proofprocs`]: the constructive steps of the upper-bound arguments.

pub mod error;
pub mod hypercore;

pub use error::{Error, Result};
pub use hypercore::{BlowupSpec, Edge, PartitionMap, UniformHypergraph};
pub mod counting;
pub mod extremal;
pub mod constructions;
pub mod proofprocs;
