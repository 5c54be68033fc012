use serde::Serialize;

use super::balancing::{solve_balancing_vector, BalancingVector};
use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::rational::Q;
use crate::walks::{closed_walk_all_edges, verify_walk, WalkCertificate};

/// A closed tight walk in `J` with prescribed visit counts, read as a
/// homomorphism from the `(k−1)`th power of a cycle to the shadow of `J`.
#[derive(Clone, Debug, Serialize)]
pub struct CycleAllocation {
    /// Cluster of each cycle vertex.
    pub sequence: Vec<usize>,
    /// For each edge of `J` (aligned with `KGraph::edges`): start and length
    /// of its inserted block, a run of consecutive copies of one ordering.
    pub blocks: Vec<Option<(usize, usize)>>,
    pub sketch_length: usize,
    pub balance: BalancingVector,
}

/// Closed tight walk of length `Σ sizes` visiting vertex `i` of `j` exactly
/// `sizes[i]` times: a covering sketch cycle plus `w(e)` repeated copies of
/// an ordering of each edge `e`, with `w` from `solve_balancing_vector`.
pub fn allocate_cycle(j: &KGraph, j_prime: &KGraph, sizes: &[usize], pi: &Q, alpha: &Q) -> Result<CycleAllocation> {
    let k = j.k();
    let t = j.n();
    if sizes.len() != t {
        return Err(Error::invalid(format!("expected {t} sizes, got {}", sizes.len())));
    }
    let total: usize = sizes.iter().sum();
    let parts = j.parts();
    let congruence = if parts.len() == 1 {
        Some(total % k)
    } else {
        if total % k != 0 {
            return Err(Error::pre(format!("total {total} is not divisible by k = {k}")));
        }
        None
    };
    let sketch = closed_walk_all_edges(j, congruence)?;
    let mut visits = vec![0i64; t];
    for &v in &sketch.sequence {
        visits[v] += 1;
    }
    if let Some(i) = (0..t).find(|&i| visits[i] > sizes[i] as i64) {
        return Err(Error::infeasible(format!(
            "sketch cycle of length {} visits cluster {i} {} times, only {} available",
            sketch.length, visits[i], sizes[i]
        )));
    }
    let b: Vec<i64> = sizes.iter().map(|&s| s as i64).collect();
    let balance = solve_balancing_vector(j, j_prime, &b, &visits, pi, alpha)?;
    let (sequence, blocks) = insert_blocks(j, &sketch.sequence, &balance.total);
    let cert = WalkCertificate::new(k, sequence.clone(), true);
    if !verify_walk(j, &cert) || sequence.len() != total {
        return Err(Error::infeasible("assembled cycle is not a closed tight walk of the right length"));
    }
    Ok(CycleAllocation { sequence, blocks, sketch_length: sketch.length, balance })
}

/// After the first window of each edge `e`, inserts `w(e)` copies of that
/// window. Each window ends at a unique position, so insertions never clash.
fn insert_blocks(j: &KGraph, walk: &[usize], w: &[i64]) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
    let k = j.k();
    let len = walk.len();
    let mut after: Vec<Option<usize>> = vec![None; len];
    let mut seen = vec![false; j.edge_count()];
    for end in 0..len {
        let window: Vec<usize> = (0..k).map(|i| walk[(end + len + 1 - k + i) % len]).collect();
        let mut key = window.clone();
        key.sort_unstable();
        let id = j.edge_id(&key).expect("walk windows are edges");
        if !seen[id] {
            seen[id] = true;
            if w[id] > 0 {
                after[end] = Some(id);
            }
        }
    }
    let mut seq = Vec::with_capacity(len + k * w.iter().sum::<i64>() as usize);
    let mut blocks = vec![None; j.edge_count()];
    for end in 0..len {
        seq.push(walk[end]);
        if let Some(id) = after[end] {
            let window: Vec<usize> = (0..k).map(|i| walk[(end + len + 1 - k + i) % len]).collect();
            let start = seq.len();
            for _ in 0..w[id] {
                seq.extend_from_slice(&window);
            }
            blocks[id] = Some((start, seq.len() - start));
        }
    }
    (seq, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hypergraph::build_clique_hypergraph;
    use crate::rational::qu;

    #[test]
    fn k4_twenty() {
        let j = build_clique_hypergraph(&Graph::complete(4), 3);
        let a = allocate_cycle(&j, &j, &[5, 5, 5, 5], &qu(0), &qu(0)).unwrap();
        assert_eq!(a.sequence.len(), 20);
        for i in 0..4 {
            assert_eq!(a.sequence.iter().filter(|&&v| v == i).count(), 5);
        }
    }

    #[test]
    fn unequal_counts() {
        let j = build_clique_hypergraph(&Graph::complete(5), 3);
        let sizes = [30, 34, 31, 40, 33];
        let a = allocate_cycle(&j, &j, &sizes, &qu(0), &qu(0)).unwrap();
        for i in 0..5 {
            assert_eq!(a.sequence.iter().filter(|&&v| v == i).count(), sizes[i]);
        }
        for (e, b) in j.edges().iter().zip(&a.blocks) {
            if let Some((s, l)) = *b {
                for p in s..s + l {
                    assert!(e.contains(&a.sequence[p]));
                }
            }
        }
    }

    #[test]
    fn too_small_fails_honestly() {
        let j = build_clique_hypergraph(&Graph::complete(5), 3);
        assert!(allocate_cycle(&j, &j, &[1, 1, 1, 1, 1], &qu(0), &qu(0)).is_err());
    }
}
