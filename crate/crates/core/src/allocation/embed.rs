use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cycle::allocate_cycle;
use super::{AllocationPlan, BalancingVector};
use crate::error::{Error, Result};
use crate::graph::{blow_up, Graph};
use crate::hypergraph::build_clique_hypergraph;
use crate::matching::bounded_degree_cover;
use crate::rational::{qu, Q};

#[derive(Clone, Debug)]
pub struct EmbedParams {
    pub k: usize,
    pub pi: Q,
    pub alpha: Q,
}

impl EmbedParams {
    pub fn new(k: usize) -> EmbedParams {
        EmbedParams { k, pi: qu(0), alpha: qu(0) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Embedding {
    /// Host vertex of each guest vertex.
    pub map: Vec<usize>,
    /// Cluster of each guest vertex, with loads against cluster sizes.
    pub plan: AllocationPlan,
    pub balance: BalancingVector,
    pub sketch_length: usize,
}

impl Embedding {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("embedding serializes")
    }
}

/// Embeds `guest` into the exact blow-up of `r_graph` with the given cluster
/// sizes. The guest must sit inside the `(k−1)`th power of the cycle
/// `0, 1, …, N−1` on its own vertex order.
pub fn embed_on_blowup(r_graph: &Graph, sizes: &[usize], guest: &Graph, params: &EmbedParams, seed: u64) -> Result<Embedding> {
    let k = params.k;
    let total: usize = sizes.iter().sum();
    if guest.n() != total {
        return Err(Error::invalid(format!("guest has {} vertices, clusters hold {total}", guest.n())));
    }
    if let Some((u, v)) = guest.edges().find(|&(u, v)| {
        let d = u.abs_diff(v);
        d.min(total - d) >= k
    }) {
        return Err(Error::invalid(format!("guest edge {u}-{v} is not in the (k−1)th power of its cycle order")));
    }
    let host = blow_up(r_graph, sizes)?;
    let j = build_clique_hypergraph(r_graph, k);
    let j_prime = bounded_degree_cover(&j)?;
    let alloc = allocate_cycle(&j, &j_prime, sizes, &params.pi, &params.alpha)?;
    let clusters = host.clusters().expect("blow-ups carry clusters").to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pools: Vec<Vec<usize>> = clusters
        .into_iter()
        .map(|mut c| {
            c.shuffle(&mut rng);
            c
        })
        .collect();
    let map: Vec<usize> = alloc.sequence.iter().map(|&i| pools[i].pop().expect("counts match sizes")).collect();
    let mut used = vec![false; host.n()];
    for &v in &map {
        if std::mem::replace(&mut used[v], true) {
            return Err(Error::infeasible(format!("host vertex {v} used twice")));
        }
    }
    if let Some((u, v)) = guest.edges().find(|&(u, v)| !host.has_edge(map[u], map[v])) {
        return Err(Error::infeasible(format!("guest edge {u}-{v} is not mapped to a host edge")));
    }
    let targets = sizes.iter().map(|&s| qu(s)).collect();
    let plan = AllocationPlan::new(alloc.sequence, sizes.len(), targets);
    Ok(Embedding { map, plan, balance: alloc.balance, sketch_length: alloc.sketch_length })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_c20_into_k4() {
        let r = Graph::complete(4);
        let guest = Graph::cycle_power(20, 2);
        let e = embed_on_blowup(&r, &[5, 5, 5, 5], &guest, &EmbedParams::new(3), 0).unwrap();
        let host = blow_up(&r, &[5, 5, 5, 5]).unwrap();
        assert!(guest.edges().all(|(u, v)| host.has_edge(e.map[u], e.map[v])));
        assert_eq!(e.plan.loads, vec![5; 4]);
    }

    #[test]
    fn order_mismatch() {
        let r = Graph::complete(4);
        let err = embed_on_blowup(&r, &[5, 5, 5, 5], &Graph::cycle_power(19, 2), &EmbedParams::new(3), 0).unwrap_err();
        assert!(err.to_string().contains("guest has"));
    }

    #[test]
    fn seeds_differ_but_stay_valid() {
        let r = Graph::cycle(5);
        let guest = Graph::cycle(30);
        let a = embed_on_blowup(&r, &[6; 5], &guest, &EmbedParams::new(2), 1).unwrap();
        let b = embed_on_blowup(&r, &[6; 5], &guest, &EmbedParams::new(2), 2).unwrap();
        assert_ne!(a.map, b.map);
    }
}
