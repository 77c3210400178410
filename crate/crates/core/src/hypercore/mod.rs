//! Uniform hypergraph values and the structural operators on them.

mod edge;
mod hypergraph;
mod index;
mod ops;
mod partition;
pub mod pattern;
pub mod text;

pub use edge::{Edge, Vertices, MAX_VERTICES};
pub(crate) use edge::mask_subsets;
pub use hypergraph::UniformHypergraph;
pub use index::EdgeIndex;
pub use ops::{blowup, co_neighborhood, complete_partite, induced, shadow};
pub use partition::{BlowupSpec, PartitionMap};
pub use pattern::{partite_name, PatternSpec};
