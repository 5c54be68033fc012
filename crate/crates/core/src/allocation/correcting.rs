use num_integer::Integer;
use serde::Serialize;

use super::cycle::allocate_cycle;
use crate::error::{Error, Result};
use crate::framework::{certify_framework, Want};
use crate::graph::Graph;
use crate::hypergraph::KGraph;
use crate::rational::{ceil_i64, floor_i64, qu, serde_q, Q};

#[derive(Clone, Debug, Serialize)]
pub struct CorrectingCycle {
    pub ell: usize,
    pub r: usize,
    pub t: usize,
    pub counts: Vec<usize>,
    /// Vertex of `R` for each of the `rℓ` cycle vertices.
    pub phi: Vec<usize>,
    /// `Σ_i |ℓ_i/ℓ − |V_i|/n|`.
    #[serde(with = "serde_q")]
    pub slack: Q,
    /// `rt²/ℓ`.
    #[serde(with = "serde_q")]
    pub slack_bound: Q,
    pub buffers: Vec<Vec<usize>>,
    pub forward: Vec<Vec<usize>>,
}

impl CorrectingCycle {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cycle serializes")
    }
}

/// Largest `ℓ ≤ bound` coprime to `k`, provided `bound ≥ k`.
pub fn largest_coprime_at_most(bound: usize, k: usize) -> Option<usize> {
    if bound < k {
        return None;
    }
    (1..=bound).rev().find(|l| l.gcd(&k) == 1)
}

/// Nonnegative integers summing to `total` that minimise
/// `Σ |c_i/total − w_i/Σw|` (largest remainders, ties to the lower index).
pub fn proportional_counts(total: usize, weights: &[usize]) -> Vec<usize> {
    let sum: usize = weights.iter().sum();
    if sum == 0 {
        return vec![0; weights.len()];
    }
    let exact: Vec<Q> = weights.iter().map(|&w| Q::new((total * w).into(), sum.into())).collect();
    let mut counts: Vec<usize> = exact.iter().map(|x| floor_i64(x) as usize).collect();
    let short = total - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = &exact[a] - qu(counts[a]);
        let rb = &exact[b] - qu(counts[b]);
        rb.cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(short) {
        counts[i] += 1;
    }
    counts
}

fn abs(x: Q) -> Q {
    if x < qu(0) {
        -x
    } else {
        x
    }
}

/// Cycle power `C_{k,rℓ}` mapped onto `R` with cluster loads proportional to
/// `sizes`, plus buffer sets and forward sets, all checked before returning.
/// `cycle` lists `V(R)` in the order of a tight Hamilton cycle of `j`.
pub fn imbalance_correcting_cycle(
    r_graph: &Graph,
    j: &KGraph,
    cycle: &[usize],
    sizes: &[usize],
    xi: &Q,
    pi: &Q,
    alpha: &Q,
) -> Result<CorrectingCycle> {
    let k = j.k();
    let nr = r_graph.n();
    if j.n() != nr || sizes.len() != nr {
        return Err(Error::invalid("R, J and sizes disagree on the vertex count"));
    }
    if *xi <= qu(0) {
        return Err(Error::invalid("ξ must be positive"));
    }
    let r = j.parts().len();
    let t = nr / r;
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted != (0..nr).collect::<Vec<_>>() {
        return Err(Error::pre("J′ must list every vertex of R once"));
    }
    let windows: Vec<Vec<usize>> = (0..nr)
        .map(|p| {
            let mut w: Vec<usize> = (0..k).map(|i| cycle[(p + i) % nr]).collect();
            w.sort_unstable();
            w
        })
        .collect();
    if let Some(w) = windows.iter().find(|w| !j.contains(w)) {
        return Err(Error::pre(format!("J′ window {w:?} is not an edge of J")));
    }
    let cert = certify_framework(r_graph, j, Want { aperiodic: r == 1, zero_free: false })?;
    if !cert.verdict.satisfies(Want { aperiodic: r == 1, zero_free: false }) {
        return Err(Error::pre(format!("(R, J) lacks the framework flags: {:?}", cert.verdict)));
    }
    let bound = floor_i64(&(qu(2 * r * t * t) / xi)) as usize;
    let ell = largest_coprime_at_most(bound, k)
        .ok_or_else(|| Error::pre(format!("no ℓ ≤ 2rt²/ξ = {bound} coprime to k: range is below k")))?;

    let classes: Vec<Vec<usize>> = if r == 1 { vec![cycle.to_vec()] } else { (0..k).map(|c| cycle.iter().copied().skip(c).step_by(k).collect()).collect() };
    let mut counts = vec![0usize; nr];
    let mut slack = qu(0);
    for class in &classes {
        let w: Vec<usize> = class.iter().map(|&i| sizes[i]).collect();
        let n: usize = w.iter().sum();
        for (&i, c) in class.iter().zip(proportional_counts(ell, &w)) {
            counts[i] = c;
            let d = abs(Q::new(c.into(), ell.into()) - Q::new(sizes[i].into(), n.into()));
            if d > *xi {
                return Err(Error::infeasible(format!("cluster {i} misses its proportion by {d} > ξ")));
            }
            slack += d;
        }
    }
    let slack_bound = Q::new((r * t * t).into(), ell.into());

    let j_prime = KGraph::new(k, nr, windows.clone())?.with_partition(j.partition().map(|p| p.to_vec()))?;
    let alloc = allocate_cycle(j, &j_prime, &counts, pi, alpha)?;
    let phi = alloc.sequence;
    let len = phi.len();
    for p in 0..len {
        for d in 1..k.min(len) {
            let (a, b) = (phi[p], phi[(p + d) % len]);
            if a == b || !r_graph.has_edge(a, b) {
                return Err(Error::infeasible(format!("positions {p} and {} break the homomorphism", (p + d) % len)));
            }
        }
    }
    let mut shadow = vec![vec![false; nr]; nr];
    for w in &windows {
        for &a in w {
            for &b in w {
                shadow[a][b] = a != b;
            }
        }
    }
    let near = |p: usize, d: usize| -> Vec<usize> { (1..=d).flat_map(|s| [(p + s) % len, (p + len - s) % len]).collect() };
    let load = |i: usize| phi.iter().filter(|&&v| v == i).count();
    let block_of = |edge: &[usize]| -> (usize, usize) {
        let id = j.edge_id(edge).expect("J′ edges are edges of J");
        alloc.blocks[id].unwrap_or((0, 0))
    };
    let interior = |(s, l): (usize, usize), trim: usize, i: usize| -> Vec<usize> {
        if l <= 2 * trim {
            return Vec::new();
        }
        (s + trim..s + l - trim).filter(|&p| phi[p] == i).collect()
    };

    let mut forward = Vec::with_capacity(nr);
    for (p, &i) in cycle.iter().enumerate() {
        let edge = &windows[(p + nr + 1 - k) % nr];
        let cand = interior(block_of(edge), k - 1, i);
        let want = ceil_i64(&(pi * qu(load(i)))).max(0) as usize;
        if cand.len() < want {
            return Err(Error::infeasible(format!("forward set for {i}: {} positions, need {want}", cand.len())));
        }
        let mid = (cand.len() - want) / 2;
        let z: Vec<usize> = cand[mid..mid + want].to_vec();
        for &x in &z {
            if near(x, k - 1).iter().any(|&y| phi[y] == i || !edge.contains(&phi[y])) {
                return Err(Error::infeasible(format!("forward vertex {x} of {i} has a neighbour outside its window")));
            }
        }
        forward.push((i, z));
    }
    forward.sort_unstable();
    let forward: Vec<Vec<usize>> = forward.into_iter().map(|(_, z)| z).collect();

    let mut buffers = Vec::with_capacity(nr);
    for i in 0..nr {
        let best = windows
            .iter()
            .filter(|w| w.contains(&i))
            .map(|w| interior(block_of(w), 2 * k - 2, i).into_iter().filter(|p| !forward[i].contains(p)).collect::<Vec<_>>())
            .max_by_key(|v| v.len())
            .unwrap_or_default();
        let want = ceil_i64(&(alpha * qu(load(i)))).max(0) as usize;
        if best.len() < want {
            return Err(Error::infeasible(format!("buffer for {i}: {} positions, need {want}", best.len())));
        }
        for &x in &best {
            for y in near(x, k - 1) {
                if !shadow[phi[x]][phi[y]] || near(y, k - 1).iter().any(|&z| z != y && !shadow[phi[y]][phi[z]]) {
                    return Err(Error::infeasible(format!("buffer vertex {x} of {i} leaves R′")));
                }
            }
        }
        buffers.push(best);
    }
    Ok(CorrectingCycle { ell, r, t, counts, phi, slack, slack_bound, buffers, forward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::build_clique_hypergraph;
    use crate::rational::q;

    #[test]
    fn coprime_choice() {
        assert_eq!(largest_coprime_at_most(128, 3), Some(128));
        assert_eq!(largest_coprime_at_most(129, 3), Some(128));
        assert_eq!(largest_coprime_at_most(2, 3), None);
    }

    #[test]
    fn proportional_rounding() {
        assert_eq!(proportional_counts(10, &[1, 1, 1]), vec![4, 3, 3]);
        assert_eq!(proportional_counts(7, &[2, 0, 5]), vec![2, 0, 5]);
    }

    #[test]
    fn equal_sizes() {
        let r = Graph::complete(4);
        let j = build_clique_hypergraph(&r, 3);
        let c = imbalance_correcting_cycle(&r, &j, &[0, 1, 2, 3], &[9, 9, 9, 9], &q(1, 2), &qu(0), &qu(0)).unwrap();
        assert_eq!(c.ell, 64);
        assert_eq!(c.counts, vec![16; 4]);
        assert!(c.slack <= c.slack_bound);
    }

    #[test]
    fn skewed_sizes() {
        let r = Graph::complete(4);
        let j = build_clique_hypergraph(&r, 3);
        let c = imbalance_correcting_cycle(&r, &j, &[0, 1, 2, 3], &[10, 10, 10, 14], &q(1, 4), &qu(0), &q(1, 100)).unwrap();
        assert_eq!(c.ell, 128);
        assert_eq!(c.counts.iter().sum::<usize>(), 128);
        assert!(c.slack <= c.slack_bound && c.slack_bound <= q(1, 4));
        assert!(c.buffers.iter().all(|b| !b.is_empty()));
    }

    #[test]
    fn xi_too_large() {
        let r = Graph::complete(4);
        let j = build_clique_hypergraph(&r, 3);
        let err = imbalance_correcting_cycle(&r, &j, &[0, 1, 2, 3], &[5; 4], &qu(40), &qu(0), &qu(0)).unwrap_err();
        assert!(err.to_string().contains("below k"));
    }
}
