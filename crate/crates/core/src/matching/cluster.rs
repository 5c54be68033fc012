use num_bigint::BigInt;
use serde::Serialize;

use super::fractional::{incidence_columns, FractionalMatching};
use super::lp;
use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::rational::{floor_i64, one, qu, serde_q, Q};

#[derive(Clone, Debug, Serialize)]
pub struct ClusterMatching {
    /// Edges on blow-up vertices; cluster `i` occupies a consecutive id range.
    pub edges: Vec<Vec<usize>>,
    pub deficiency: Vec<usize>,
    #[serde(with = "serde_q")]
    pub bound: Q,
    pub within_bound: bool,
}

/// Integral matching in the blow-up of `j` with cluster sizes `x`.
///
/// `y` is a fractional matching of `j`; it is scaled by the smallest cluster.
/// Without it the b-matching LP `max Σy, Ay ≤ x` is solved directly.
pub fn blowup_cluster_matching(
    j: &KGraph,
    x: &[usize],
    alpha: &Q,
    beta: &Q,
    y: Option<&FractionalMatching>,
) -> Result<ClusterMatching> {
    let t = j.n();
    if x.len() != t {
        return Err(Error::invalid(format!("expected {t} cluster sizes, got {}", x.len())));
    }
    let (lo, hi) = (x.iter().copied().min().unwrap_or(0), x.iter().copied().max().unwrap_or(0));
    if qu(hi) > (one() + alpha) * qu(lo) {
        return Err(Error::pre(format!("cluster sizes {lo}..{hi} are not (1+α)-balanced")));
    }
    if let Some(parts) = j.partition() {
        let totals: Vec<usize> = parts.iter().map(|p| p.iter().map(|&i| x[i]).sum()).collect();
        if totals.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::pre("per-part totals differ"));
        }
    }
    let real: Vec<Q> = match y {
        Some(m) => {
            m.verify(j)?;
            j.edges().iter().map(|e| m.weight(e) * qu(lo)).collect()
        }
        None => {
            let cols = incidence_columns(j);
            let c = vec![one(); j.edge_count()];
            let b: Vec<Q> = x.iter().map(|&v| qu(v)).collect();
            lp::maximize(t, &cols, &c, &b)?.x
        }
    };
    let mut counts: Vec<usize> = real.iter().map(|w| floor_i64(w).max(0) as usize).collect();
    let mut load = vec![0usize; t];
    for (e, &c) in j.edges().iter().zip(&counts) {
        for &i in e {
            load[i] += c;
        }
    }
    for (id, e) in j.edges().iter().enumerate() {
        let spare = e.iter().map(|&i| x[i] - load[i]).min().unwrap_or(0);
        counts[id] += spare;
        for &i in e {
            load[i] += spare;
        }
    }
    let mut cursor: Vec<usize> = x
        .iter()
        .scan(0usize, |acc, &s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect();
    let mut edges = Vec::new();
    for (e, &c) in j.edges().iter().zip(&counts) {
        for _ in 0..c {
            edges.push(
                e.iter()
                    .map(|&i| {
                        cursor[i] += 1;
                        cursor[i] - 1
                    })
                    .collect(),
            );
        }
    }
    let deficiency: Vec<usize> = (0..t).map(|i| x[i] - load[i]).collect();
    let total: usize = x.iter().sum();
    let tk = Q::from_integer(BigInt::from(t).pow(j.k().saturating_sub(1) as u32));
    let bound = beta * qu(total) + tk;
    let within_bound = deficiency.iter().all(|&d| qu(d) <= bound);
    Ok(ClusterMatching { edges, deficiency, bound, within_bound })
}
