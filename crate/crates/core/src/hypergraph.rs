//! k-uniform hypergraphs, in particular clique hypergraphs `K_k(G)`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{qu, Q};

/// A k-uniform hypergraph with sorted edges stored in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<Vec<usize>>>,
}

impl KGraph {
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<KGraph> {
        if k == 0 {
            return Err(Error::invalid("uniformity must be positive"));
        }
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            let distinct = e.windows(2).all(|w| w[0] < w[1]);
            if e.len() != k || !distinct {
                return Err(Error::invalid(format!("edge {e:?} is not a {k}-set")));
            }
            if e.iter().any(|&v| v >= n) {
                return Err(Error::invalid(format!("edge {e:?} out of range for n={n}")));
            }
            out.push(e);
        }
        out.sort_unstable();
        out.dedup();
        Ok(KGraph { k, n, edges: out, partition: None })
    }

    pub fn empty(k: usize, n: usize) -> KGraph {
        KGraph { k, n, edges: Vec::new(), partition: None }
    }

    /// Attaches a partition; every edge must meet each part at most once
    /// when there are two or more parts.
    pub fn with_partition(mut self, parts: Option<Vec<Vec<usize>>>) -> Result<KGraph> {
        if let Some(parts) = &parts {
            if parts.len() >= 2 {
                let mut owner = vec![usize::MAX; self.n];
                for (i, p) in parts.iter().enumerate() {
                    for &v in p {
                        owner[v] = i;
                    }
                }
                for e in &self.edges {
                    let mut seen: Vec<usize> = e.iter().map(|&v| owner[v]).collect();
                    seen.sort_unstable();
                    if seen.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::invalid(format!("edge {e:?} is not partite")));
                    }
                }
            }
        }
        self.partition = parts;
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<KGraph> {
        let raw: KGraph = serde_json::from_str(text)?;
        let part = raw.partition.clone();
        KGraph::new(raw.k, raw.n, raw.edges)?.with_partition(part)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("kgraph serializes")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn partition(&self) -> Option<&[Vec<usize>]> {
        self.partition.as_deref()
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        match &self.partition {
            Some(p) => p.clone(),
            None => vec![(0..self.n).collect()],
        }
    }

    /// Index of the edge with the given vertex set (any order).
    pub fn edge_id(&self, set: &[usize]) -> Option<usize> {
        if set.windows(2).all(|w| w[0] < w[1]) {
            return self.edges.binary_search_by(|e| e.as_slice().cmp(set)).ok();
        }
        let mut s = set.to_vec();
        s.sort_unstable();
        self.edges.binary_search(&s).ok()
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        self.edge_id(set).is_some()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Edge ids containing each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn is_spanning(&self) -> bool {
        self.degrees().iter().all(|&d| d > 0)
    }

    /// Sub-hypergraph keeping the listed edge ids.
    pub fn sub(&self, ids: &[usize]) -> KGraph {
        let edges = ids.iter().map(|&i| self.edges[i].clone()).collect();
        let mut h = KGraph::new(self.k, self.n, edges).expect("sub-hypergraph of a valid kgraph");
        h.partition = self.partition.clone();
        h
    }

    /// Keeps the edges satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&[usize]) -> bool) -> KGraph {
        KGraph {
            k: self.k,
            n: self.n,
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
            partition: self.partition.clone(),
        }
    }

    pub fn is_subgraph_of(&self, other: &KGraph) -> bool {
        self.k == other.k && self.n == other.n && self.edges.iter().all(|e| other.contains(e))
    }

    /// Edge-wise intersection, as in `H ∩ K_k(G')`.
    pub fn intersect(&self, other: &KGraph) -> KGraph {
        self.filter(|e| other.contains(e))
    }

    /// Relabels through `map` (old id to new id, `None` drops every edge
    /// touching that vertex) onto `n` new vertices.
    pub fn relabel(&self, map: &[Option<usize>], n: usize) -> KGraph {
        let edges = self
            .edges
            .iter()
            .filter_map(|e| e.iter().map(|&v| map[v]).collect::<Option<Vec<_>>>())
            .collect();
        KGraph::new(self.k, n, edges).expect("relabelled edges stay valid")
    }
}

/// Graphs are 2-graphs.
impl From<&Graph> for KGraph {
    fn from(g: &Graph) -> KGraph {
        let edges = g.edges().map(|(u, v)| vec![u, v]).collect();
        let h = KGraph::new(2, g.n(), edges).expect("graph edges are 2-sets");
        h.with_partition(g.partition().map(|p| p.to_vec())).expect("graph edges are partite")
    }
}

/// Vertex order obtained by repeatedly removing a vertex of minimum degree.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n.max(1)];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut order = Vec::with_capacity(n);
    let mut lo = 0;
    for _ in 0..n {
        lo = lo.min(n - 1);
        while buckets[lo].is_empty() {
            lo += 1;
        }
        let v = *buckets[lo].iter().next().expect("non-empty bucket");
        buckets[lo].remove(&v);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                buckets[deg[u]].remove(&u);
                deg[u] -= 1;
                buckets[deg[u]].insert(u);
                lo = lo.min(deg[u]);
            }
        }
    }
    order
}

/// All k-cliques of `G` as the edges of `K_k(G)`; the partition of `G` is
/// inherited.
pub fn build_clique_hypergraph(g: &Graph, k: usize) -> KGraph {
    assert!(k >= 1, "clique size must be positive");
    let n = g.n();
    let order = degeneracy_order(g);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let later: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut out: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| rank[u] > rank[v]).collect();
            out.sort_unstable();
            out
        })
        .collect();
    let mut edges = Vec::new();
    let mut stack = Vec::with_capacity(k);
    for v in 0..n {
        stack.push(v);
        extend_cliques(&later, k, &mut stack, &later[v], &mut edges);
        stack.pop();
    }
    for e in &mut edges {
        e.sort_unstable();
    }
    edges.sort_unstable();
    KGraph { k, n, edges, partition: g.partition().map(|p| p.to_vec()) }
}

fn extend_cliques(
    later: &[Vec<usize>],
    k: usize,
    stack: &mut Vec<usize>,
    candidates: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == k {
        out.push(stack.clone());
        return;
    }
    for &u in candidates {
        let next = intersect_sorted(candidates, &later[u]);
        if next.len() + stack.len() + 1 < k {
            continue;
        }
        stack.push(u);
        extend_cliques(later, k, stack, &next, out);
        stack.pop();
    }
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The link graph `L_H(v)`: the (k−1)-sets `X` with `X ∪ {v} ∈ E(H)`.
pub fn link_graph(h: &KGraph, v: usize) -> Result<KGraph> {
    if v >= h.n {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    if h.k < 2 {
        return Err(Error::invalid("link graphs need uniformity at least 2"));
    }
    let edges = h
        .edges
        .iter()
        .filter(|e| e.contains(&v))
        .map(|e| e.iter().copied().filter(|&u| u != v).collect())
        .collect();
    KGraph::new(h.k - 1, h.n, edges)
}

/// The `i`-th shadow `∂_i H`: every `i`-subset of an edge.
pub fn shadow(h: &KGraph, i: usize) -> Result<KGraph> {
    if i == 0 || i > h.k {
        return Err(Error::invalid(format!("shadow level {i} outside 1..={}", h.k)));
    }
    if i == h.k {
        return Ok(h.clone());
    }
    let set: BTreeSet<Vec<usize>> = h.edges.iter().flat_map(|e| e.iter().copied().combinations(i)).collect();
    let mut s = KGraph::new(i, h.n, set.into_iter().collect())?;
    s.partition = h.partition.clone();
    Ok(s)
}

/// Per-vertex numbers of linked edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkedEdgeProfile {
    pub counts: Vec<usize>,
}

impl LinkedEdgeProfile {
    pub fn min(&self) -> usize {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    /// Whether every vertex has at least `μ·n^k` linked edges.
    pub fn meets(&self, mu: &Q, n: usize, k: usize) -> bool {
        let need = mu * qu(n.pow(k as u32));
        self.counts.iter().all(|&c| qu(c) >= need)
    }
}

/// Counts, for every vertex `v`, the edges `e ∌ v` for which some edge
/// `f ∋ v` has `|e ∩ f| = k − 1`. Such an `e` must equal `(f ∖ {v}) ∪ {x}`,
/// so it suffices to try each link edge of `v` with each added vertex.
pub fn linked_edge_profile(h: &KGraph) -> LinkedEdgeProfile {
    let inc = h.incidence();
    let counts = (0..h.n)
        .map(|v| {
            let mut linked = BTreeSet::new();
            for &fi in &inc[v] {
                let rest: Vec<usize> = h.edges[fi].iter().copied().filter(|&u| u != v).collect();
                for x in 0..h.n {
                    if x == v || rest.contains(&x) {
                        continue;
                    }
                    let mut e = rest.clone();
                    e.push(x);
                    e.sort_unstable();
                    if let Some(id) = h.edge_id(&e) {
                        linked.insert(id);
                    }
                }
            }
            linked.len()
        })
        .collect();
    LinkedEdgeProfile { counts }
}

/// Groups edges by their (k−1)-subsets: each key maps to the vertices whose
/// addition completes an edge.
pub(crate) fn codegree_map(h: &KGraph) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for e in &h.edges {
        for skip in 0..h.k {
            let key: Vec<usize> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            map.entry(key).or_default().push(e[skip]);
        }
    }
    for list in map.values_mut() {
        list.sort_unstable();
    }
    map
}

/// `Ĥ`: joins `x` and `y` when `L_H(x)` and `L_H(y)` share an edge.
pub fn hat_graph(h: &KGraph) -> Graph {
    let mut edges = Vec::new();
    for list in codegree_map(h).values() {
        for (i, &x) in list.iter().enumerate() {
            for &y in &list[i + 1..] {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edges(h.n, &edges).expect("hat graph edges are valid")
}

/// Least common link edge of `x` and `y`, if any.
pub fn common_link_edge(h: &KGraph, x: usize, y: usize) -> Option<Vec<usize>> {
    let lx = link_graph(h, x).ok()?;
    let ly = link_graph(h, y).ok()?;
    lx.edges.iter().find(|q| ly.contains(q) && !q.contains(&x) && !q.contains(&y)).cloned()
}

/// A set of `k+1` vertices all of whose `k`-subsets are edges; the
/// lexicographically least such set is returned.
pub fn find_k_plus_1_clique(h: &KGraph) -> Option<Vec<usize>> {
    let deg = h.degrees();
    for e in &h.edges {
        let last = *e.last().expect("edges are non-empty");
        for x in last + 1..h.n {
            if deg[x] == 0 {
                continue;
            }
            let ok = (0..h.k).all(|skip| {
                let mut f: Vec<usize> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                f.push(x);
                h.contains(&f)
            });
            if ok {
                let mut s = e.clone();
                s.push(x);
                return Some(s);
            }
        }
    }
    None
}

/// Whether every `k`-subset of `set` is an edge.
pub fn is_clique_of(h: &KGraph, set: &[usize]) -> bool {
    set.len() == h.k + 1 && set.iter().copied().combinations(h.k).all(|s| h.contains(&s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3k4() -> KGraph {
        build_clique_hypergraph(&Graph::complete(4), 3)
    }

    #[test]
    fn clique_hypergraph_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(build_clique_hypergraph(&c5, 2), KGraph::from(&c5));
        assert_eq!(k3k4().edges(), &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(build_clique_hypergraph(&c5, 3).edge_count(), 0);
    }

    #[test]
    fn link_examples() {
        let l = link_graph(&k3k4(), 0).unwrap();
        assert_eq!(l.edges(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
        let h5 = build_clique_hypergraph(&Graph::complete(5), 3);
        let without4 = h5.filter(|e| !e.contains(&4));
        assert_eq!(link_graph(&without4, 4).unwrap().edge_count(), 0);
        assert!(link_graph(&h5, 9).is_err());
    }

    #[test]
    fn shadow_examples() {
        let s = shadow(&k3k4(), 2).unwrap();
        assert_eq!(s, KGraph::from(&Graph::complete(4)));
        assert_eq!(shadow(&k3k4(), 3).unwrap(), k3k4());
        let one = KGraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(shadow(&one, 1).unwrap().edges(), &[vec![0], vec![1], vec![2]]);
        assert!(shadow(&one, 4).is_err());
    }

    #[test]
    fn linked_profile_examples() {
        assert_eq!(linked_edge_profile(&k3k4()).counts, vec![1; 4]);
        let one = KGraph::new(3, 5, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(linked_edge_profile(&one).counts, vec![0; 5]);
        let c5 = KGraph::from(&Graph::cycle(5));
        assert_eq!(linked_edge_profile(&c5).counts, vec![2; 5]);
    }

    #[test]
    fn hat_examples() {
        assert_eq!(hat_graph(&k3k4()).edge_vec(), Graph::complete(4).edge_vec());
        let one = KGraph::new(3, 4, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(hat_graph(&one).edge_count(), 0);
        let c4 = KGraph::from(&Graph::cycle(4));
        assert_eq!(hat_graph(&c4).edge_vec(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn clique_witness_examples() {
        assert_eq!(find_k_plus_1_clique(&k3k4()), Some(vec![0, 1, 2, 3]));
        assert_eq!(find_k_plus_1_clique(&KGraph::from(&Graph::cycle(5))), None);
        let h5 = build_clique_hypergraph(&Graph::complete(5), 3).filter(|e| e != [0, 1, 2]);
        let w = find_k_plus_1_clique(&h5).unwrap();
        assert!(is_clique_of(&h5, &w));
        assert_eq!(w, vec![0, 1, 3, 4]);
    }

    #[test]
    fn json_round_trip() {
        let h = k3k4();
        assert_eq!(KGraph::from_json(&h.to_json()).unwrap(), h);
        assert!(KGraph::from_json(r#"{"k":3,"n":4,"edges":[[0,1]]}"#).is_err());
    }
}
