//! Simple undirected graphs with an optional equal-sized vertex partition.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{qu, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    partition: Option<Vec<Vec<usize>>>,
    clusters: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clusters: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { n, adj: vec![Vec::new(); n], partition: None, clusters: None }
    }

    /// Builds a graph, rejecting self-loops and out-of-range ids. Repeated
    /// pairs are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge {u}-{v} out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { n, adj, partition: None, clusters: None })
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.adj[u] = (0..n).filter(|&v| v != u).collect();
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::cycle_power(n, 1)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    /// The `p`-th power of the cycle `0, 1, …, n−1`: vertices at cyclic
    /// distance at most `p` are adjacent.
    pub fn cycle_power(n: usize, p: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for d in 1..=p {
                let j = (i + d) % n;
                if j != i {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("cycle power edges are valid")
    }

    /// The `p`-th power of the path `0, 1, …, n−1`.
    pub fn path_power(n: usize, p: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..(i + p + 1).min(n) {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).expect("path power edges are valid")
    }

    pub fn complete_multipartite(sizes: &[usize]) -> Graph {
        blow_up(&Graph::complete(sizes.len()), sizes).expect("sizes match base")
    }

    /// Attaches an equal-sized partition. Parts must be disjoint and cover
    /// every vertex; with two or more parts no edge may lie inside a part.
    pub fn with_partition(mut self, parts: Vec<Vec<usize>>) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        for p in &parts {
            for &v in p {
                if v >= self.n {
                    return Err(Error::invalid(format!("partition vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::invalid(format!("vertex {v} in two parts")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(format!("vertex {v} in no part")));
        }
        if let Some(first) = parts.first() {
            if parts.iter().any(|p| p.len() != first.len()) {
                return Err(Error::invalid("partition parts differ in size"));
            }
        }
        if parts.len() >= 2 {
            let owner = owner_map(self.n, &parts);
            for (u, v) in self.edges() {
                if owner[u] == owner[v] {
                    return Err(Error::invalid(format!("edge {u}-{v} inside part {}", owner[u])));
                }
            }
        }
        if parts.is_empty() && self.n == 0 {
            parts = Vec::new();
        }
        self.partition = Some(parts);
        Ok(self)
    }

    pub fn with_clusters(mut self, clusters: Vec<Vec<usize>>) -> Graph {
        self.clusters = Some(clusters);
        self
    }

    pub fn without_partition(mut self) -> Graph {
        self.partition = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partition(&self) -> Option<&[Vec<usize>]> {
        self.partition.as_deref()
    }

    /// Cluster annotation left by [`blow_up`]; parts may differ in size.
    pub fn clusters(&self) -> Option<&[Vec<usize>]> {
        self.clusters.as_deref()
    }

    /// The parts used for partite reasoning: the partition, or all of `V`.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        match &self.partition {
            Some(p) => p.clone(),
            None => vec![(0..self.n).collect()],
        }
    }

    /// Part index of every vertex (all zero without a partition).
    pub fn part_of(&self) -> Vec<usize> {
        match &self.partition {
            Some(p) => owner_map(self.n, p),
            None => vec![0; self.n],
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        DegreeSequence { degrees }
    }

    /// Number of neighbours of `v` inside `set` (given as a membership mask).
    pub fn degree_into(&self, v: usize, mask: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&u| mask[u]).count()
    }

    /// Subgraph induced on `vertices`, relabelled by position.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            adj[i] = self.adj[v].iter().filter(|&&u| pos[u] != usize::MAX).map(|&u| pos[u]).collect();
            adj[i].sort_unstable();
        }
        Graph { n: vertices.len(), adj, partition: None, clusters: None }
    }

    /// Copy of the graph with the listed edges removed.
    pub fn remove_edges(&self, edges: &[(usize, usize)]) -> Graph {
        let gone: BTreeSet<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let mut g = self.clone();
        for u in 0..g.n {
            g.adj[u].retain(|&v| !gone.contains(&(u.min(v), u.max(v))));
        }
        g
    }

    pub fn add_edges(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut all = self.edge_vec();
        all.extend_from_slice(edges);
        let mut g = Graph::from_edges(self.n, &all)?;
        g.clusters = self.clusters.clone();
        match &self.partition {
            Some(p) => g.with_partition(p.clone()),
            None => Ok(g),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# n: {}\n", self.n);
        if let Some(parts) = &self.partition {
            let body: Vec<String> = parts
                .iter()
                .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            out.push_str(&format!("# partition: {}\n", body.join("|")));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        self.to_json_with_meta(None)
    }

    pub fn to_json_with_meta(&self, meta: Option<serde_json::Value>) -> String {
        let doc = GraphJson {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            partition: self.partition.clone(),
            clusters: self.clusters.clone(),
            meta,
        };
        serde_json::to_string(&doc).expect("graph serializes")
    }

    /// Parses the edge-list format. Without a `# n:` header, vertex ids are
    /// compacted to `0..n` in increasing order.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut declared_n: Option<usize> = None;
        let mut raw_parts: Option<Vec<Vec<u64>>> = None;
        let mut raw_edges: Vec<(u64, u64, usize)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(body) = rest.strip_prefix("partition:") {
                    let mut parts = Vec::new();
                    for chunk in body.trim().split('|') {
                        let mut part = Vec::new();
                        for tok in chunk.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                            part.push(tok.parse::<u64>().map_err(|_| Error::Parse {
                                line: lineno,
                                msg: format!("bad partition entry {tok:?}"),
                            })?);
                        }
                        parts.push(part);
                    }
                    raw_parts = Some(parts);
                } else if let Some(body) = rest.strip_prefix("n:") {
                    declared_n = Some(body.trim().parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: "bad vertex count".into(),
                    })?);
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse { line: lineno, msg: format!("expected two ids, got {line:?}") });
            }
            let parse = |t: &str| {
                t.parse::<u64>().map_err(|_| Error::Parse { line: lineno, msg: format!("bad vertex id {t:?}") })
            };
            let (u, v) = (parse(toks[0])?, parse(toks[1])?);
            if u == v {
                return Err(Error::Parse { line: lineno, msg: format!("self-loop at {u}") });
            }
            raw_edges.push((u, v, lineno));
        }
        let (n, map): (usize, Box<dyn Fn(u64) -> usize>) = match declared_n {
            Some(n) => {
                let too_big = raw_edges
                    .iter()
                    .flat_map(|&(u, v, l)| [(u, l), (v, l)])
                    .find(|&(x, _)| x as usize >= n);
                if let Some((x, l)) = too_big {
                    return Err(Error::Parse { line: l, msg: format!("vertex {x} ≥ declared n={n}") });
                }
                (n, Box::new(|x| x as usize))
            }
            None => {
                let mut ids: BTreeSet<u64> = BTreeSet::new();
                for &(u, v, _) in &raw_edges {
                    ids.insert(u);
                    ids.insert(v);
                }
                for p in raw_parts.iter().flatten() {
                    ids.extend(p.iter().copied());
                }
                let ids: Vec<u64> = ids.into_iter().collect();
                let n = ids.len();
                (n, Box::new(move |x| ids.binary_search(&x).expect("id collected")))
            }
        };
        let edges: Vec<(usize, usize)> = raw_edges.iter().map(|&(u, v, _)| (map(u), map(v))).collect();
        let g = Graph::from_edges(n, &edges)?;
        match raw_parts {
            Some(parts) => {
                let parts: Vec<Vec<usize>> =
                    parts.into_iter().map(|p| p.into_iter().map(|x| map(x)).collect()).collect();
                g.with_partition(parts)
            }
            None => Ok(g),
        }
    }

    pub fn parse_json(text: &str) -> Result<Graph> {
        let doc: GraphJson = serde_json::from_str(text)?;
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Graph::from_edges(doc.n, &edges)?;
        g.clusters = doc.clusters;
        match doc.partition {
            Some(p) => g.with_partition(p),
            None => Ok(g),
        }
    }

    /// Loads a JSON graph and returns its `meta` object alongside.
    pub fn parse_json_with_meta(text: &str) -> Result<(Graph, Option<serde_json::Value>)> {
        let doc: serde_json::Value = serde_json::from_str(text)?;
        let meta = doc.get("meta").cloned();
        Ok((Graph::parse_json(text)?, meta))
    }
}

/// Nondecreasing degree sequence `d_1 ≤ … ≤ d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub degrees: Vec<usize>,
}

impl DegreeSequence {
    /// `d_i` with 1-based indexing.
    pub fn d(&self, i: usize) -> usize {
        self.degrees[i - 1]
    }
}

fn owner_map(n: usize, parts: &[Vec<usize>]) -> Vec<usize> {
    let mut owner = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    owner
}

pub fn load_graph(path: &Path, format: Format) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    match format {
        Format::EdgeList => Graph::parse_edge_list(&text),
        Format::Json => Graph::parse_json(&text),
    }
}

pub fn save_graph(g: &Graph, path: &Path, format: Format) -> Result<()> {
    let text = match format {
        Format::EdgeList => g.to_edge_list(),
        Format::Json => g.to_json(),
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// Replaces base vertex `i` by an independent cluster of `sizes[i]` vertices
/// and each base edge by a complete bipartite graph. Clusters occupy
/// consecutive ids and are recorded as the cluster annotation; when all sizes
/// agree they also become the partition.
pub fn blow_up(base: &Graph, sizes: &[usize]) -> Result<Graph> {
    if sizes.len() != base.n() {
        return Err(Error::pre(format!("{} sizes for {} base vertices", sizes.len(), base.n())));
    }
    if sizes.iter().any(|&s| s == 0) {
        return Err(Error::pre("cluster sizes must be positive"));
    }
    let mut clusters = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        clusters.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let mut edges = Vec::new();
    for (i, j) in base.edges() {
        for &u in &clusters[i] {
            for &v in &clusters[j] {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(next, &edges)?;
    let equal = sizes.windows(2).all(|w| w[0] == w[1]);
    let g = if equal && sizes.len() >= 2 { g.with_partition(clusters.clone())? } else { g };
    Ok(g.with_clusters(clusters))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ApproxClause {
    /// `deg_{G'}(v;U) ≥ deg_G(v;U) − d|U|` fails.
    Degree { vertex: usize, part: usize },
    /// `|V(G') ∩ U| ≥ (1−ε)|U|` fails.
    Size { part: usize },
    /// `|V(G') ∩ U| = |V(G') ∩ U'|` fails.
    Balance { part: usize, other: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxReport {
    pub holds: bool,
    pub violation: Option<ApproxClause>,
}

/// Checks whether `sub` is a partite `(ε,d)`-approximation of `g`.
///
/// `kept` lists the surviving vertices of `g` in increasing order; `sub` is
/// indexed by position in `kept` and must be a subgraph of `g[kept]`.
pub fn is_approximation(g: &Graph, kept: &[usize], sub: &Graph, eps: &Q, d: &Q) -> Result<ApproxReport> {
    if sub.n() != kept.len() {
        return Err(Error::invalid("approximant vertex count differs from kept list"));
    }
    if kept.windows(2).any(|w| w[0] >= w[1]) || kept.last().is_some_and(|&v| v >= g.n()) {
        return Err(Error::invalid("kept vertices must be increasing ids of G"));
    }
    for (a, b) in sub.edges() {
        if !g.has_edge(kept[a], kept[b]) {
            return Err(Error::invalid(format!("edge {}-{} not in G", kept[a], kept[b])));
        }
    }
    let parts = g.parts();
    let owner = owner_map(g.n(), &parts);
    let mut alive = vec![false; g.n()];
    for &v in kept {
        alive[v] = true;
    }
    let fail = |c| Ok(ApproxReport { holds: false, violation: Some(c) });
    for (pi, &v) in kept.iter().enumerate() {
        let mut deg_g = vec![0usize; parts.len()];
        let mut deg_s = vec![0usize; parts.len()];
        for &u in g.neighbors(v) {
            deg_g[owner[u]] += 1;
        }
        for &u in sub.neighbors(pi) {
            deg_s[owner[kept[u]]] += 1;
        }
        for (ui, part) in parts.iter().enumerate() {
            if qu(deg_s[ui]) < qu(deg_g[ui]) - d * qu(part.len()) {
                return fail(ApproxClause::Degree { vertex: v, part: ui });
            }
        }
    }
    let surviving: Vec<usize> = parts.iter().map(|p| p.iter().filter(|&&v| alive[v]).count()).collect();
    let one = Q::from_integer(BigInt::from(1));
    for (ui, part) in parts.iter().enumerate() {
        if qu(surviving[ui]) < (&one - eps) * qu(part.len()) {
            return fail(ApproxClause::Size { part: ui });
        }
    }
    for ui in 1..parts.len() {
        if surviving[ui] != surviving[0] {
            return fail(ApproxClause::Balance { part: 0, other: ui });
        }
    }
    Ok(ApproxReport { holds: true, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn edge_list_triangle() {
        let g = Graph::parse_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_vec(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn edge_list_empty_and_self_loop() {
        assert_eq!(Graph::parse_edge_list("").unwrap().n(), 0);
        assert!(matches!(Graph::parse_edge_list("3 3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::parse_edge_list("0 1\nx y"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn edge_list_compacts_ids() {
        let g = Graph::parse_edge_list("10 20\n20 30").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_vec(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn partition_header_and_intra_part_edge() {
        let g = Graph::parse_edge_list("# partition: 0,1|2,3\n0 2\n1 3").unwrap();
        assert_eq!(g.partition().unwrap().len(), 2);
        assert!(Graph::parse_edge_list("# partition: 0,1|2,3\n0 1").is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = blow_up(&Graph::complete(3), &[2, 2, 2]).unwrap();
        let back = Graph::parse_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(back.edge_vec(), g.edge_vec());
        assert_eq!(back.partition(), g.partition());
    }

    #[test]
    fn blow_up_examples() {
        let k22 = blow_up(&Graph::complete(2), &[2, 2]).unwrap();
        assert_eq!(k22.edge_vec(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let tri = blow_up(&Graph::complete(3), &[1, 1, 1]).unwrap();
        assert_eq!(tri.edge_vec(), Graph::complete(3).edge_vec());
        // Three cluster pairs with 2·2 cross edges each.
        let k222 = blow_up(&Graph::complete(3), &[2, 2, 2]).unwrap();
        assert_eq!(k222.edge_count(), 12);
        assert!(blow_up(&Graph::complete(3), &[1, 1]).is_err());
    }

    #[test]
    fn approximation_examples() {
        let g = Graph::complete(10);
        let all: Vec<usize> = (0..10).collect();
        let r = is_approximation(&g, &all, &g, &q(0, 1), &q(0, 1)).unwrap();
        assert!(r.holds);

        let kept: Vec<usize> = (0..9).collect();
        let sub = g.induced(&kept);
        let r = is_approximation(&g, &kept, &sub, &q(1, 20), &q(1, 1)).unwrap();
        assert_eq!(r.violation, Some(ApproxClause::Size { part: 0 }));

        let bip = blow_up(&Graph::complete(2), &[5, 5]).unwrap();
        let kept: Vec<usize> = (1..10).collect();
        let sub = bip.induced(&kept);
        let r = is_approximation(&bip, &kept, &sub, &q(1, 2), &q(1, 1)).unwrap();
        assert!(matches!(r.violation, Some(ApproxClause::Balance { .. })));
    }

    #[test]
    fn approximation_degree_clause() {
        let g = Graph::complete(4);
        let all: Vec<usize> = (0..4).collect();
        let sub = g.remove_edges(&[(0, 1), (0, 2)]);
        let tight = is_approximation(&g, &all, &sub, &q(0, 1), &q(1, 4)).unwrap();
        assert_eq!(tight.violation, Some(ApproxClause::Degree { vertex: 0, part: 0 }));
        assert!(is_approximation(&g, &all, &sub, &q(0, 1), &q(1, 2)).unwrap().holds);
    }
}
