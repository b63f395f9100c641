//! Constructive vertex partitions for graphs and tournaments that exclude a
//! pair of induced subgraphs, together with exact oracles, universal
//! cographs, and a randomized construction of locally split graphs.

pub mod bitset;
pub mod blocks;
pub mod cli;
pub mod cograph;
pub mod construction;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod oracles;
pub mod partition;
mod piece;
pub mod tournament;

pub use bitset::VertexSet;
pub use error::{Error, Result, Witness};
pub use graph::Graph;
pub use oracles::{Certificate, FPartition, PartClass};

/// Version stamped into every JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;
