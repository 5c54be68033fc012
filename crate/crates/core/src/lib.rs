//! Hamilton frameworks in dense graphs.
//!
//! The crate builds clique hypergraphs `K_k(G)`, decides tight connectivity and
//! aperiodicity, computes exact fractional matchings, runs the allocation
//! machinery used to embed powers of Hamilton cycles, and ships brute-force
//! oracles for cross-checking all of it on small instances.

pub mod allocation;
pub mod error;
pub mod framework;
pub mod generators;
pub mod graph;
pub mod hypergraph;
pub mod matching;
pub mod oracle;
pub mod pipeline;
pub mod rational;
pub mod walks;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::KGraph;
pub use rational::Q;
