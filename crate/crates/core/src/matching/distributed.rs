use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::rational::{ceil_i64, qu, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributedMatching {
    pub edges: Vec<Vec<usize>>,
    /// Edges of the matching inside each family member.
    pub hits: Vec<usize>,
    pub attempts: usize,
}

/// Vertex-disjoint edges of `h` meeting every member of `family` at least `⌈πn⌉` times.
pub fn distributed_matching(
    h: &KGraph,
    family: &[KGraph],
    pi: &Q,
    max_size: usize,
    gamma: &Q,
    seed: u64,
    retries: usize,
) -> Result<DistributedMatching> {
    let n = h.n();
    let k = h.k();
    let floor = gamma * Q::from_integer(BigInt::from(n).pow(k as u32));
    for (i, f) in family.iter().enumerate() {
        if !f.is_subgraph_of(h) {
            return Err(Error::invalid(format!("family member {i} is not a subgraph")));
        }
        if qu(f.edge_count()) < floor {
            return Err(Error::pre(format!("family member {i} has {} edges, below γn^k", f.edge_count())));
        }
    }
    let need = ceil_i64(&(pi * qu(n))).max(0) as usize;
    if family.is_empty() || need == 0 {
        return Ok(DistributedMatching { edges: Vec::new(), hits: vec![0; family.len()], attempts: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=retries.max(1) {
        let mut used = vec![false; n];
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut ok = true;
        for f in family {
            let mut have = edges.iter().filter(|e| f.contains(e)).count();
            let mut order: Vec<usize> = (0..f.edge_count()).collect();
            order.shuffle(&mut rng);
            for id in order {
                if have >= need || edges.len() >= max_size {
                    break;
                }
                let e = &f.edges()[id];
                if e.iter().all(|&v| !used[v]) {
                    for &v in e {
                        used[v] = true;
                    }
                    edges.push(e.clone());
                    have += 1;
                }
            }
            if have < need {
                ok = false;
                break;
            }
        }
        if ok {
            let hits = family.iter().map(|f| edges.iter().filter(|e| f.contains(e)).count()).collect();
            edges.sort();
            return Ok(DistributedMatching { edges, hits, attempts: attempt });
        }
    }
    Err(Error::infeasible(format!("no distributed matching found in {} attempts", retries.max(1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hypergraph::build_clique_hypergraph;
    use crate::rational::{q, qi};

    #[test]
    fn empty_family() {
        let h = build_clique_hypergraph(&Graph::complete(9), 3);
        let m = distributed_matching(&h, &[], &q(1, 9), 3, &qi(0), 0, 5).unwrap();
        assert!(m.edges.is_empty());
    }

    #[test]
    fn whole_hypergraph_member() {
        let h = build_clique_hypergraph(&Graph::complete(9), 3);
        let m = distributed_matching(&h, &[h.clone()], &q(1, 9), 3, &q(1, 100), 0, 5).unwrap();
        assert_eq!(m.edges.len(), 1);
        assert_eq!(m.hits, vec![1]);
    }

    #[test]
    fn two_disjoint_members() {
        let h = build_clique_hypergraph(&Graph::complete(12), 3);
        let a = h.filter(|e| e[0] % 2 == 0);
        let b = h.filter(|e| e[0] % 2 == 1);
        let m = distributed_matching(&h, &[a, b], &q(1, 12), 4, &q(1, 100), 0, 10).unwrap();
        assert!(m.hits.iter().all(|&x| x >= 1));
        let mut seen = [false; 12];
        for e in &m.edges {
            for &v in e {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
    }

    #[test]
    fn sparse_member_rejected() {
        let h = build_clique_hypergraph(&Graph::complete(6), 3);
        let thin = h.sub(&[0]);
        assert!(distributed_matching(&h, &[thin], &q(1, 6), 2, &q(1, 100), 0, 3).is_err());
    }
}
