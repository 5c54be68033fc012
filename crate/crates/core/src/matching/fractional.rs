use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp::{self, Column};
use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::rational::{fmt_q, one, parse_q, qu, Q};

/// Sparse nonnegative edge weighting with per-vertex load at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalMatching {
    pub weights: BTreeMap<Vec<usize>, Q>,
    /// Optimal fractional vertex cover, present when produced by the LP.
    pub cover: Option<Vec<Q>>,
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    edge: Vec<usize>,
    weight: String,
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    edges: Vec<WeightJson>,
    size: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cover: Option<Vec<String>>,
}

impl FractionalMatching {
    pub fn new(weights: impl IntoIterator<Item = (Vec<usize>, Q)>) -> FractionalMatching {
        let weights = weights
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(mut e, w)| {
                e.sort_unstable();
                (e, w)
            })
            .collect();
        FractionalMatching { weights, cover: None }
    }

    pub fn size(&self) -> Q {
        self.weights.values().sum()
    }

    pub fn support(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, edge: &[usize]) -> Q {
        self.weights.get(edge).cloned().unwrap_or_else(Q::zero)
    }

    pub fn loads(&self, n: usize) -> Vec<Q> {
        let mut load = vec![Q::zero(); n];
        for (e, w) in &self.weights {
            for &v in e {
                load[v] += w;
            }
        }
        load
    }

    /// Checks nonnegativity, membership in `h`, and the load constraint.
    pub fn verify(&self, h: &KGraph) -> Result<()> {
        for (e, w) in &self.weights {
            if w.is_negative() {
                return Err(Error::invalid(format!("negative weight on {e:?}")));
            }
            if !h.contains(e) {
                return Err(Error::invalid(format!("{e:?} is not an edge")));
            }
        }
        if let Some(v) = self.loads(h.n()).iter().position(|l| *l > one()) {
            return Err(Error::invalid(format!("vertex {v} is overloaded")));
        }
        Ok(())
    }

    pub fn is_perfect(&self, h: &KGraph) -> bool {
        h.k() > 0 && self.size() == qu(h.n()) / qu(h.k())
    }

    /// Checks that the attached cover is feasible for the dual and matches the size.
    pub fn verify_cover(&self, h: &KGraph) -> bool {
        let Some(y) = &self.cover else { return false };
        y.len() == h.n()
            && y.iter().all(|v| !v.is_negative())
            && h.edges().iter().all(|e| e.iter().map(|&v| &y[v]).sum::<Q>() >= one())
            && y.iter().sum::<Q>() == self.size()
    }

    fn doc(&self) -> MatchingJson {
        MatchingJson {
            edges: self
                .weights
                .iter()
                .map(|(e, w)| WeightJson { edge: e.clone(), weight: fmt_q(w) })
                .collect(),
            size: fmt_q(&self.size()),
            cover: self.cover.as_ref().map(|y| y.iter().map(fmt_q).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.doc()).expect("matching serializes")
    }

    pub fn from_json(text: &str) -> Result<FractionalMatching> {
        FractionalMatching::from_doc(serde_json::from_str(text)?)
    }

    fn from_doc(doc: MatchingJson) -> Result<FractionalMatching> {
        let mut weights = Vec::with_capacity(doc.edges.len());
        for item in doc.edges {
            weights.push((item.edge, parse_q(&item.weight)?));
        }
        let mut m = FractionalMatching::new(weights);
        if parse_q(&doc.size)? != m.size() {
            return Err(Error::invalid("size does not equal the sum of weights"));
        }
        if let Some(cover) = doc.cover {
            m.cover = Some(cover.iter().map(|s| parse_q(s)).collect::<Result<_>>()?);
        }
        Ok(m)
    }
}

impl Serialize for FractionalMatching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FractionalMatching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FractionalMatching::from_doc(MatchingJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn incidence_columns(h: &KGraph) -> Vec<Column> {
    h.edges().iter().map(|e| e.iter().map(|&v| (v, one())).collect()).collect()
}

/// Greedy packings tried before the simplex runs.
const PACKING_TRIALS: usize = 32;

/// Disjoint edges picked greedily, scanning from `offset` with stride `step`.
fn greedy_packing(h: &KGraph, offset: usize, step: usize) -> Vec<usize> {
    let m = h.edge_count();
    let mut used = vec![false; h.n()];
    let mut out = Vec::new();
    for i in 0..m {
        let e = (offset + i * step) % m;
        if h.edges()[e].iter().all(|&v| !used[v]) {
            for &v in &h.edges()[e] {
                used[v] = true;
            }
            out.push(e);
        }
    }
    out
}

/// A stride coprime to `m`, so the scan visits every edge once.
fn stride(m: usize, hint: usize) -> usize {
    (hint.max(1)..).find(|s| num_integer::gcd(*s, m) == 1).unwrap_or(1)
}

fn uniform_cover(n: usize, k: usize) -> Vec<Q> {
    vec![Q::new(1.into(), k.into()); n]
}

/// Maximum fractional matching by exact simplex, with its dual cover attached.
///
/// Runs as column generation: the program is solved on a subset of edges,
/// every edge is priced against the exact dual, and the violated ones are
/// added until none is left. Greedy packings seed the subset and come first
/// in column order. A packing or program value of `n/k` stops early, with the
/// uniform `1/k` cover as the dual.
pub fn max_fractional_matching(h: &KGraph) -> FractionalMatching {
    let n = h.n();
    let k = h.k();
    let m = h.edge_count();
    let ceiling = Q::new(n.into(), k.into());
    let packings: Vec<Vec<usize>> = (0..PACKING_TRIALS.min(m))
        .map(|r| greedy_packing(h, r * m / PACKING_TRIALS, stride(m, 1 + r * 7919 % m.max(1))))
        .collect();
    let best = packings.iter().max_by_key(|p| (p.len(), std::cmp::Reverse(p.first().copied()))).cloned().unwrap_or_default();
    if best.len() * k == n && n > 0 {
        let mut fm = FractionalMatching::new(best.iter().map(|&e| (h.edges()[e].clone(), one())));
        fm.cover = Some(uniform_cover(n, k));
        return fm;
    }
    let mut order: Vec<usize> = Vec::new();
    let mut active = vec![false; m];
    for e in best.iter().chain(packings.iter().flatten()) {
        if !active[*e] {
            active[*e] = true;
            order.push(*e);
        }
    }
    let ones = vec![one(); n];
    loop {
        let cols: Vec<Column> = order.iter().map(|&e| h.edges()[e].iter().map(|&v| (v, one())).collect()).collect();
        let c = vec![one(); order.len()];
        let sol = lp::maximize(n, &cols, &c, &ones).expect("matching polytope is bounded");
        let weights = order.iter().map(|&e| h.edges()[e].clone()).zip(sol.x);
        if sol.value == ceiling {
            let mut fm = FractionalMatching::new(weights);
            fm.cover = Some(uniform_cover(n, k));
            return fm;
        }
        let mut priced: Vec<(Q, usize)> = (0..m)
            .filter(|&e| !active[e])
            .filter_map(|e| {
                let load: Q = h.edges()[e].iter().map(|&v| &sol.y[v]).sum();
                (load < one()).then_some((load, e))
            })
            .collect();
        if priced.is_empty() {
            let mut fm = FractionalMatching::new(weights);
            fm.cover = Some(sol.y);
            return fm;
        }
        priced.sort();
        for (_, e) in priced.into_iter().take(n.max(16)) {
            active[e] = true;
            order.push(e);
        }
    }
}

pub fn has_perfect_fractional_matching(h: &KGraph) -> (bool, FractionalMatching) {
    let m = max_fractional_matching(h);
    (m.is_perfect(h), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blow_up, Graph};
    use crate::hypergraph::build_clique_hypergraph;
    use crate::rational::q;

    #[test]
    fn odd_cycle_is_fractionally_perfect() {
        let h = build_clique_hypergraph(&Graph::cycle(5), 2);
        let (ok, m) = has_perfect_fractional_matching(&h);
        assert!(ok);
        assert_eq!(m.size(), q(5, 2));
        m.verify(&h).unwrap();
        assert!(m.verify_cover(&h));
    }

    #[test]
    fn star_is_not() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let h = build_clique_hypergraph(&star, 2);
        let (ok, m) = has_perfect_fractional_matching(&h);
        assert!(!ok);
        assert_eq!(m.size(), q(1, 1));
        assert!(m.verify_cover(&h));
    }

    #[test]
    fn triangles_of_k4() {
        let h = build_clique_hypergraph(&Graph::complete(4), 3);
        let m = max_fractional_matching(&h);
        assert_eq!(m.size(), q(4, 3));
        assert!(m.is_perfect(&h));
        assert!(m.verify_cover(&h));
    }

    #[test]
    fn partite_blow_up_of_triangle() {
        let g = blow_up(&Graph::complete(3), &[2, 2, 2]).unwrap();
        let h = build_clique_hypergraph(&g, 3);
        assert_eq!(h.edge_count(), 8);
        let (ok, m) = has_perfect_fractional_matching(&h);
        assert!(ok);
        m.verify(&h).unwrap();
    }

    #[test]
    fn empty_hypergraph() {
        let h = KGraph::empty(3, 0);
        let m = max_fractional_matching(&h);
        assert!(m.size().is_zero());
        assert!(m.is_perfect(&h));
    }

    #[test]
    fn json_round_trip() {
        let h = build_clique_hypergraph(&Graph::cycle(5), 2);
        let m = max_fractional_matching(&h);
        let back = FractionalMatching::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
