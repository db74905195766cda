pub mod criteria;
pub mod dsu;
pub mod error;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod heuristics;
pub mod io;
pub mod mappings;
pub mod oracle;
pub mod packing;
pub mod pipeline;
pub mod report;

pub use dsu::UnionFind;
pub use error::{Error, Result};
pub use graph::{Edge, EdgeLabeling, MergeRecord, NodeSet, Partition, ProblemInstance, ProblemKind, Subgraph, Triangle};
