//! Allocation of guest graphs to reduced graphs: path-power allocations,
//! the cycle-walking Markov chain, balancing vectors, imbalance-correcting
//! cycles, zero-block splitting and explicit embeddings on exact blow-ups.

mod balancing;
mod correcting;
mod cycle;
mod embed;
mod markov;
mod pathpower;
mod zeroblocks;

use serde::Serialize;

use crate::graph::Graph;
use crate::rational::{qu, serde_q, Q};

pub use balancing::{solve_balancing_vector, BalancingVector};
pub use correcting::{imbalance_correcting_cycle, largest_coprime_at_most, proportional_counts, CorrectingCycle};
pub use cycle::{allocate_cycle, CycleAllocation};
pub use embed::{embed_on_blowup, EmbedParams, Embedding};
pub use markov::{
    cycle_power_distance_ok, markov_allocate, MarkovAllocation, MarkovChain, DEFAULT_RETRIES,
};
pub use pathpower::{allocate_to_path_power, PathPowerAllocation};
pub use zeroblocks::{routing_walks, split_zero_blocks, Piece, ZeroBlockSplit, ZeroRun, OMEGA_LIMIT};

/// Guest-to-cluster map with its loads and targets.
#[derive(Clone, Debug, Serialize)]
pub struct AllocationPlan {
    pub map: Vec<usize>,
    pub loads: Vec<usize>,
    #[serde(serialize_with = "ser_q_vec")]
    pub targets: Vec<Q>,
    /// `max_i |load_i − target_i| / target_i`.
    #[serde(with = "serde_q")]
    pub max_deviation: Q,
}

fn ser_q_vec<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl AllocationPlan {
    pub fn new(map: Vec<usize>, clusters: usize, targets: Vec<Q>) -> AllocationPlan {
        let mut loads = vec![0usize; clusters];
        for &c in &map {
            loads[c] += 1;
        }
        let max_deviation = loads
            .iter()
            .zip(&targets)
            .filter(|(_, t)| **t > qu(0))
            .map(|(&l, t)| {
                let d = qu(l) - t;
                (if d < qu(0) { -d } else { d }) / t
            })
            .max()
            .unwrap_or_else(|| qu(0));
        AllocationPlan { map, loads, targets, max_deviation }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

/// Every edge `uv` of `h` has `map[u]map[v]` as an edge of `target`.
pub fn is_homomorphism(h: &Graph, target: &Graph, map: &[usize]) -> bool {
    map.len() == h.n() && map.iter().all(|&x| x < target.n()) && h.edges().all(|(u, v)| target.has_edge(map[u], map[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn plan_deviation() {
        let p = AllocationPlan::new(vec![0, 0, 0, 1], 2, vec![qu(2), qu(2)]);
        assert_eq!(p.loads, vec![3, 1]);
        assert_eq!(p.max_deviation, q(1, 2));
    }

    #[test]
    fn homomorphism_scan() {
        let c6 = Graph::cycle(6);
        let k2 = Graph::complete(2);
        assert!(is_homomorphism(&c6, &k2, &[0, 1, 0, 1, 0, 1]));
        assert!(!is_homomorphism(&Graph::cycle(5), &k2, &[0, 1, 0, 1, 0]));
    }
}
