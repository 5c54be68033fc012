use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{codegree_map, KGraph};

/// Integer weighting of the edges of a k-graph, aligned with `KGraph::edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationVector {
    pub values: Vec<i64>,
    pub max_abs: i64,
}

impl AllocationVector {
    pub fn new(values: Vec<i64>) -> AllocationVector {
        let max_abs = values.iter().map(|v| v.abs()).max().unwrap_or(0);
        AllocationVector { values, max_abs }
    }

    pub fn loads(&self, h: &KGraph) -> Vec<i64> {
        let mut load = vec![0i64; h.n()];
        for (e, &w) in h.edges().iter().zip(&self.values) {
            for &v in e {
                load[v] += w;
            }
        }
        load
    }

    pub fn to_json(&self, h: &KGraph) -> String {
        let entries: Vec<serde_json::Value> = h
            .edges()
            .iter()
            .zip(&self.values)
            .filter(|(_, &w)| w != 0)
            .map(|(e, &w)| serde_json::json!({ "edge": e, "value": w }))
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "values": entries, "max_abs": self.max_abs }))
            .expect("allocation serializes")
    }
}

fn bfs_path(adj: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Integer edge weights whose vertex loads equal `b`, built from unit flows on `Ĥ`.
pub fn integer_flow_allocate(h: &KGraph, b: &[i64], s: i64) -> Result<AllocationVector> {
    let n = h.n();
    if b.len() != n {
        return Err(Error::invalid(format!("expected {n} entries in b, got {}", b.len())));
    }
    if let Some(v) = b.iter().position(|x| x.abs() > s) {
        return Err(Error::pre(format!("|b({v})| = {} exceeds s = {s}", b[v].abs())));
    }
    let parts = h.parts();
    for (i, part) in parts.iter().enumerate() {
        let total: i64 = part.iter().map(|&v| b[v]).sum();
        if total != 0 {
            return Err(Error::pre(format!("b sums to {total} on part {i}")));
        }
    }
    let mut link: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (key, list) in codegree_map(h) {
        for (i, &x) in list.iter().enumerate() {
            for &y in &list[i + 1..] {
                link.entry((x, y)).or_insert_with(|| key.clone());
            }
        }
    }
    let mut part_of = vec![0usize; n];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in link.keys() {
        if part_of[x] == part_of[y] {
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    for (i, part) in parts.iter().enumerate() {
        if let Some(&root) = part.first() {
            let mut seen = vec![false; n];
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            if part.iter().any(|&v| !seen[v]) {
                return Err(Error::pre(format!("hat graph is disconnected on part {i}")));
            }
        }
    }

    let mut rest = b.to_vec();
    let mut flow: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    while let Some(y) = rest.iter().position(|&r| r > 0) {
        let x = parts[part_of[y]]
            .iter()
            .copied()
            .filter(|&v| rest[v] < 0)
            .min()
            .expect("parts are balanced");
        let path = bfs_path(&adj, y, x).expect("part is connected");
        for pair in path.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            if u < v {
                *flow.entry((u, v)).or_insert(0) += 1;
            } else {
                *flow.entry((v, u)).or_insert(0) -= 1;
            }
        }
        rest[y] -= 1;
        rest[x] += 1;
    }

    let mut values = vec![0i64; h.edge_count()];
    for ((x, y), f) in flow {
        if f == 0 {
            continue;
        }
        let q = &link[&(x, y)];
        let with = |v: usize| {
            let mut e = q.clone();
            e.push(v);
            h.edge_id(&e).expect("common link edge completes an edge")
        };
        values[with(x)] += f;
        values[with(y)] -= f;
    }
    let w = AllocationVector::new(values);
    let bound = h.k() as i64 * s * (n * n) as i64;
    if w.loads(h) != b || w.max_abs > bound {
        return Err(Error::infeasible("flow allocation failed its own check"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hypergraph::build_clique_hypergraph;

    #[test]
    fn zero_demand() {
        let h = build_clique_hypergraph(&Graph::complete(4), 3);
        let w = integer_flow_allocate(&h, &[0, 0, 0, 0], 1).unwrap();
        assert!(w.values.iter().all(|&v| v == 0));
        assert_eq!(w.max_abs, 0);
    }

    #[test]
    fn triangle() {
        let h = build_clique_hypergraph(&Graph::complete(3), 2);
        let w = integer_flow_allocate(&h, &[1, -1, 0], 1).unwrap();
        assert_eq!(w.loads(&h), vec![1, -1, 0]);
        assert_eq!(h.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(w.values, vec![0, 1, -1]);
        assert!(w.max_abs <= 18);
    }

    #[test]
    fn k4_triples() {
        let h = build_clique_hypergraph(&Graph::complete(4), 3);
        let w = integer_flow_allocate(&h, &[1, -1, 0, 0], 1).unwrap();
        assert_eq!(w.loads(&h), vec![1, -1, 0, 0]);
        assert!(w.max_abs <= 48);
    }

    #[test]
    fn preconditions_are_distinct() {
        let h = build_clique_hypergraph(&Graph::complete(3), 2);
        let over = integer_flow_allocate(&h, &[2, -2, 0], 1).unwrap_err().to_string();
        let unbalanced = integer_flow_allocate(&h, &[1, 0, 0], 1).unwrap_err().to_string();
        let disconnected = integer_flow_allocate(&build_clique_hypergraph(&Graph::path(4), 2), &[1, 0, 0, -1], 1)
            .unwrap_err()
            .to_string();
        assert!(over.contains("exceeds"));
        assert!(unbalanced.contains("sums"));
        assert!(disconnected.contains("disconnected"));
    }
}
