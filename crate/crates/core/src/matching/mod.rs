//! Fractional matchings, covers, and integer allocations on k-graphs.

mod cluster;
mod cover;
mod distributed;
mod flow;
mod fractional;
pub mod lp;
mod sparsify;
mod tutte;

pub use cluster::{blowup_cluster_matching, ClusterMatching};
pub use cover::bounded_degree_cover;
pub use distributed::{distributed_matching, DistributedMatching};
pub use flow::{integer_flow_allocate, AllocationVector};
pub use fractional::{has_perfect_fractional_matching, max_fractional_matching, FractionalMatching};
pub use sparsify::sparsify_matching;
pub use tutte::{tutte_check, TutteReport, TUTTE_LIMIT};
