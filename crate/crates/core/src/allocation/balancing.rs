use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::matching::{blowup_cluster_matching, integer_flow_allocate};
use crate::rational::{ceil_i64, floor_i64, qu, Q};

/// Edge weights `w = w₂ + w₃ + w₄ + w₅` aligned with `KGraph::edges`.
#[derive(Clone, Debug, Serialize)]
pub struct BalancingVector {
    pub w2: Vec<i64>,
    pub w3: Vec<i64>,
    pub w4: Vec<i64>,
    pub w5: Vec<i64>,
    pub total: Vec<i64>,
    /// `⌊πn⌋`; `within_cap` records `‖w₅‖∞ ≤ cap`.
    pub cap: i64,
    pub within_cap: bool,
}

fn loads(j: &KGraph, w: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; j.n()];
    for (e, &x) in j.edges().iter().zip(w) {
        for &v in e {
            out[v] += x;
        }
    }
    out
}

/// Finds `w ≥ 0` with `base + A·w = b`, `w(e) ≥ ⌈4πn⌉` on every edge and
/// `w(e) ≥ ⌈3αm⌉` on the edges of `j_prime`, where `n = Σb / r` and
/// `m = min b`. `base` is the load already placed by the sketch cycle.
pub fn solve_balancing_vector(j: &KGraph, j_prime: &KGraph, b: &[i64], base: &[i64], pi: &Q, alpha: &Q) -> Result<BalancingVector> {
    let t = j.n();
    let k = j.k() as i64;
    if b.len() != t || base.len() != t {
        return Err(Error::invalid(format!("expected {t} entries in b and base")));
    }
    if !j_prime.is_subgraph_of(j) {
        return Err(Error::pre("J′ is not a subgraph of J"));
    }
    if j.edge_count() == 0 {
        return Err(Error::pre("J has no edges"));
    }
    let parts = j.parts();
    let r = parts.len() as i64;
    let n = b.iter().sum::<i64>() / r;
    let m = b.iter().copied().min().unwrap_or(0);
    let lower_all = ceil_i64(&(qu(4) * pi * Q::from_integer(n.into())));
    let lower_prime = ceil_i64(&(qu(3) * alpha * Q::from_integer(m.into())));
    let edges = j.edges();
    let w2: Vec<i64> = edges.iter().map(|e| if j_prime.contains(e) { lower_prime } else { 0 }).collect();
    let w3 = vec![ceil_i64(&(qu(5) * pi * Q::from_integer(n.into()))); edges.len()];
    let sum23: Vec<i64> = w2.iter().zip(&w3).map(|(a, c)| a + c).collect();
    let rest: Vec<i64> = loads(j, &sum23).iter().zip(b).zip(base).map(|((l, &b), &s)| b - s - l).collect();
    if let Some(v) = rest.iter().position(|&x| x < 0) {
        return Err(Error::infeasible(format!("reserved weights overfill cluster {v} by {}", -rest[v])));
    }
    let w4 = matching_counts(j, &rest)?;
    let c: Vec<i64> = loads(j, &w4).iter().zip(&rest).map(|(l, x)| x - l).collect();
    let l1: i64 = c.iter().sum();
    if l1 % k != 0 {
        return Err(Error::pre(format!("residual total {l1} is not divisible by k = {k}")));
    }
    let mut w5 = vec![0i64; edges.len()];
    let mut left = c.clone();
    loop {
        let best = (0..edges.len())
            .map(|i| (edges[i].iter().map(|&v| left[v]).min().unwrap_or(0), i))
            .max_by_key(|&(m, i)| (m, std::cmp::Reverse(i)));
        match best {
            Some((m, i)) if m > 0 => {
                w5[i] += 1;
                for &v in &edges[i] {
                    left[v] -= 1;
                }
            }
            _ => break,
        }
    }
    w5[0] += left.iter().sum::<i64>() / k;
    let c_prime: Vec<i64> = loads(j, &w5).iter().zip(&c).map(|(l, x)| x - l).collect();
    let s = c_prime.iter().map(|x| x.abs()).max().unwrap_or(0);
    if s > 0 {
        let flow = integer_flow_allocate(j, &c_prime, s)?;
        for (x, f) in w5.iter_mut().zip(&flow.values) {
            *x += f;
        }
    }
    let total: Vec<i64> = (0..edges.len()).map(|i| w2[i] + w3[i] + w4[i] + w5[i]).collect();
    let check: Vec<i64> = loads(j, &total).iter().zip(base).map(|(l, s)| l + s).collect();
    if check != b {
        return Err(Error::infeasible("balancing identity failed"));
    }
    for (i, e) in edges.iter().enumerate() {
        if total[i] < lower_all.max(0) {
            return Err(Error::infeasible(format!("weight {} on {e:?} is below ⌈4πn⌉ = {lower_all}", total[i])));
        }
        if j_prime.contains(e) && total[i] < lower_prime {
            return Err(Error::infeasible(format!("weight {} on J′ edge {e:?} is below ⌈3αm⌉ = {lower_prime}", total[i])));
        }
    }
    let cap = floor_i64(&(pi * Q::from_integer(n.into())));
    let within_cap = w5.iter().all(|x| x.abs() <= cap);
    Ok(BalancingVector { w2, w3, w4, w5, total, cap, within_cap })
}

/// Edge counts of a near-perfect matching in the blow-up with sizes `x`.
fn matching_counts(j: &KGraph, x: &[i64]) -> Result<Vec<i64>> {
    let mut counts = vec![0i64; j.edge_count()];
    let lo = x.iter().copied().min().unwrap_or(0);
    let hi = x.iter().copied().max().unwrap_or(0);
    if lo <= 0 {
        return Ok(counts);
    }
    let sizes: Vec<usize> = x.iter().map(|&v| v as usize).collect();
    let slack = Q::new(hi.into(), lo.into()) - qu(1);
    let cm = blowup_cluster_matching(j, &sizes, &slack, &qu(0), None)?;
    let mut cluster_of = Vec::with_capacity(sizes.iter().sum());
    for (i, &s) in sizes.iter().enumerate() {
        cluster_of.extend(std::iter::repeat(i).take(s));
    }
    for e in &cm.edges {
        let mut key: Vec<usize> = e.iter().map(|&v| cluster_of[v]).collect();
        key.sort_unstable();
        let id = j.edge_id(&key).ok_or_else(|| Error::infeasible("cluster matching left J"))?;
        counts[id] += 1;
    }
    Ok(counts)
}
