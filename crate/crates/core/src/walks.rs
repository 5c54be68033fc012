//! Tight components, periods and tight-walk constructions.
//!
//! Everything runs on the ordered-clique digraph `D`: its nodes are the
//! orderings of the edges of `H`, with an arc `K₁ → K₂` whenever the last
//! `k−1` entries of `K₁` are the first `k−1` entries of `K₂`. A closed tight
//! walk of length `ℓ` is a closed directed walk of length `ℓ` in `D`.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{codegree_map, hat_graph, is_clique_of, KGraph};

/// Largest permitted node count `k!·|E(H)|`.
pub const DIGRAPH_NODE_LIMIT: usize = 10_000_000;

pub struct OrderedCliqueDigraph {
    k: usize,
    perms: Vec<Vec<usize>>,
    factorials: Vec<usize>,
    edges: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

impl OrderedCliqueDigraph {
    pub fn new(h: &KGraph) -> Result<OrderedCliqueDigraph> {
        let k = h.k();
        let kf = factorial(k);
        let count = kf.checked_mul(h.edge_count()).unwrap_or(usize::MAX);
        if count > DIGRAPH_NODE_LIMIT {
            return Err(Error::guard(format!(
                "ordered-clique digraph would have {count} nodes (limit {DIGRAPH_NODE_LIMIT})"
            )));
        }
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        let factorials = (0..=k).map(factorial).collect();
        let mut g = OrderedCliqueDigraph {
            k,
            perms,
            factorials,
            edges: h.edges().to_vec(),
            offsets: Vec::with_capacity(count + 1),
            targets: Vec::new(),
        };
        let codeg = codegree_map(h);
        g.offsets.push(0);
        for node in 0..count {
            let t = g.tuple(node);
            let mut key: Vec<usize> = t[1..].to_vec();
            key.sort_unstable();
            if let Some(xs) = codeg.get(&key) {
                for &x in xs {
                    let mut next = t[1..].to_vec();
                    next.push(x);
                    let id = g.node_of(&next).expect("codegree completion is an edge");
                    g.targets.push(id);
                }
            }
            g.offsets.push(g.targets.len());
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    /// Index of the underlying edge of a node.
    pub fn edge_of(&self, node: usize) -> usize {
        node / self.perms.len()
    }

    pub fn tuple(&self, node: usize) -> Vec<usize> {
        let e = &self.edges[node / self.perms.len()];
        self.perms[node % self.perms.len()].iter().map(|&i| e[i]).collect()
    }

    /// Node id of an ordered tuple, if it orders an edge.
    pub fn node_of(&self, tuple: &[usize]) -> Option<usize> {
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        if sorted.len() != self.k || sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let e = self.edges.binary_search(&sorted).ok()?;
        let pattern: Vec<usize> = tuple.iter().map(|v| sorted.binary_search(v).expect("member")).collect();
        let mut rank = 0;
        for i in 0..self.k {
            let smaller = pattern[i + 1..].iter().filter(|&&p| p < pattern[i]).count();
            rank += smaller * self.factorials[self.k - 1 - i];
        }
        Some(e * self.perms.len() + rank)
    }
}

/// Strongly connected components by an iterative Tarjan search. Returns the
/// component id of every node and the number of components.
pub fn tarjan_scc(node_count: usize, succ: impl Fn(usize) -> Vec<usize>) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; node_count];
    let mut low = vec![0; node_count];
    let mut on_stack = vec![false; node_count];
    let mut comp = vec![UNSEEN; node_count];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    for root in 0..node_count {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count)
}

/// Period of every strongly connected component, from BFS levels: the gcd
/// over arcs `u → v` inside the component of `level(u) + 1 − level(v)`.
pub fn scc_periods(node_count: usize, succ: impl Fn(usize) -> Vec<usize>, comp: &[usize], count: usize) -> Vec<usize> {
    let mut level = vec![usize::MAX; node_count];
    let mut period = vec![0usize; count];
    let mut rooted = vec![false; count];
    for root in 0..node_count {
        let c = comp[root];
        if rooted[c] {
            continue;
        }
        rooted[c] = true;
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut g = 0usize;
        while let Some(u) = queue.pop_front() {
            for v in succ(u) {
                if comp[v] != c {
                    continue;
                }
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                } else {
                    let diff = (level[u] + 1).abs_diff(level[v]);
                    g = g.gcd(&diff);
                }
            }
        }
        period[c] = g;
    }
    period
}

/// Period data of one tight component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodInfo {
    /// gcd of the closed-walk lengths over all of the component's digraph.
    pub period: usize,
    /// Period of each strongly connected piece of the component's digraph.
    pub scc_periods: Vec<usize>,
    /// Whether some closed tight walk has length coprime to `k`.
    pub aperiodic_mod_k: bool,
}

/// Tight components of a k-graph together with the digraph data needed by
/// the walk constructions.
pub struct TightAnalysis {
    pub digraph: OrderedCliqueDigraph,
    pub scc_of_node: Vec<usize>,
    pub scc_count: usize,
    pub scc_period: Vec<usize>,
    /// Tight component id of every edge; ids ordered by least edge.
    pub component_of_edge: Vec<usize>,
    pub component_count: usize,
    scc_component: Vec<usize>,
}

impl TightAnalysis {
    pub fn new(h: &KGraph) -> Result<TightAnalysis> {
        let digraph = OrderedCliqueDigraph::new(h)?;
        let nodes = digraph.node_count();
        let succ = |v: usize| digraph.successors(v).to_vec();
        let (scc_of_node, scc_count) = tarjan_scc(nodes, succ);
        let scc_period = scc_periods(nodes, |v| digraph.successors(v).to_vec(), &scc_of_node, scc_count);
        // Orderings of one edge lie in at most k! pieces; merge them.
        let mut parent: Vec<usize> = (0..scc_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let kf = factorial(h.k());
        for e in 0..h.edge_count() {
            let first = find(&mut parent, scc_of_node[e * kf]);
            for p in 1..kf {
                let other = find(&mut parent, scc_of_node[e * kf + p]);
                if other != first {
                    parent[other] = first;
                }
            }
        }
        let mut label = vec![usize::MAX; scc_count];
        let mut component_of_edge = vec![0; h.edge_count()];
        let mut component_count = 0;
        for e in 0..h.edge_count() {
            let root = find(&mut parent, scc_of_node[e * kf]);
            if label[root] == usize::MAX {
                label[root] = component_count;
                component_count += 1;
            }
            component_of_edge[e] = label[root];
        }
        let scc_component = (0..scc_count).map(|s| label[find(&mut parent, s)]).collect();
        Ok(TightAnalysis {
            digraph,
            scc_of_node,
            scc_count,
            scc_period,
            component_of_edge,
            component_count,
            scc_component,
        })
    }

    /// Edge ids of a tight component.
    pub fn members(&self, comp: usize) -> Vec<usize> {
        (0..self.component_of_edge.len()).filter(|&e| self.component_of_edge[e] == comp).collect()
    }

    pub fn is_tightly_connected(&self) -> bool {
        self.component_count == 1
    }

    fn sccs_of(&self, comp: usize) -> Vec<usize> {
        (0..self.scc_count).filter(|&s| self.scc_component[s] == comp).collect()
    }

    pub fn period(&self, comp: usize) -> Result<PeriodInfo> {
        if comp >= self.component_count {
            return Err(Error::invalid(format!("unknown tight component {comp}")));
        }
        let k = self.digraph.k();
        let mut scc_periods: Vec<usize> = self.sccs_of(comp).iter().map(|&s| self.scc_period[s]).collect();
        let period = scc_periods.iter().fold(0usize, |g, &d| g.gcd(&d));
        let aperiodic_mod_k = scc_periods.iter().any(|&d| d.gcd(&k) == 1);
        scc_periods.sort_unstable();
        Ok(PeriodInfo { period, scc_periods, aperiodic_mod_k })
    }

    /// First node (in id order) of a strongly connected piece of `comp`
    /// whose period is coprime to `k`.
    fn coprime_root(&self, comp: usize) -> Option<usize> {
        let k = self.digraph.k();
        (0..self.digraph.node_count()).find(|&v| {
            let s = self.scc_of_node[v];
            self.scc_component[s] == comp && self.scc_period[s].gcd(&k) == 1
        })
    }

    /// Shortest closed walk through `base` whose length is coprime to `k`,
    /// as a node list `base = n₀, …, n_ℓ = base`.
    fn coprime_cycle_at(&self, base: usize) -> Option<Vec<usize>> {
        let k = self.digraph.k();
        let scc = self.scc_of_node[base];
        let states = self.digraph.node_count() * k;
        let mut prev = vec![usize::MAX; states];
        let start = base * k;
        prev[start] = start;
        let mut queue = VecDeque::from([start]);
        let mut goal = None;
        'bfs: while let Some(s) = queue.pop_front() {
            let (u, r) = (s / k, s % k);
            for &v in self.digraph.successors(u) {
                if self.scc_of_node[v] != scc {
                    continue;
                }
                let r2 = (r + 1) % k;
                let t = v * k + r2;
                if v == base && r2.gcd(&k) == 1 {
                    prev[t] = s;
                    goal = Some(t);
                    break 'bfs;
                }
                if prev[t] == usize::MAX {
                    prev[t] = s;
                    queue.push_back(t);
                }
            }
        }
        let mut path = vec![goal?];
        loop {
            let cur = *path.last().expect("path non-empty");
            let p = prev[cur];
            path.push(p);
            if p == start {
                break;
            }
        }
        path.reverse();
        Some(path.into_iter().map(|s| s / k).collect())
    }

    /// A closed tight walk of length coprime to `k` in `comp`, if one exists.
    pub fn coprime_walk(&self, h: &KGraph, comp: usize) -> Option<WalkCertificate> {
        let root = self.coprime_root(comp)?;
        let cycle = self.coprime_cycle_at(root)?;
        Some(WalkCertificate::closed_from_nodes(h, &self.digraph, &cycle))
    }

    /// Shortest path in `D` from `from` to a node satisfying `goal`, through
    /// nodes accepted by `allowed`. Successors are explored in increasing
    /// order of the appended vertex. The path must have at least `min_len`
    /// arcs (0 or 1).
    fn bfs_path(
        &self,
        from: usize,
        allowed: impl Fn(usize) -> bool,
        goal: impl Fn(usize) -> bool,
        min_len: usize,
    ) -> Option<Vec<usize>> {
        if min_len == 0 && goal(from) {
            return Some(vec![from]);
        }
        let n = self.digraph.node_count();
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in self.digraph.successors(u) {
                if !allowed(v) {
                    continue;
                }
                if goal(v) {
                    let mut path = vec![v, u];
                    let mut cur = u;
                    while cur != from {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Closed walk from `base` visiting every edge of the strongly connected
    /// piece containing `base`, greedily heading to the nearest unvisited
    /// edge. Returned as nodes `base, …, base`.
    fn covering_cycle(&self, base: usize, edge_count: usize) -> Result<Vec<usize>> {
        let scc = self.scc_of_node[base];
        let mut visited = vec![false; edge_count];
        let mut remaining = edge_count;
        let mut nodes = vec![base];
        visited[self.digraph.edge_of(base)] = true;
        remaining -= 1;
        let allowed = |v: usize| self.scc_of_node[v] == scc;
        while remaining > 0 {
            let cur = *nodes.last().expect("non-empty walk");
            let path = self
                .bfs_path(cur, allowed, |v| !visited[self.digraph.edge_of(v)], 1)
                .ok_or_else(|| Error::pre("walk cannot reach every edge: not tightly connected"))?;
            for &v in &path[1..] {
                let e = self.digraph.edge_of(v);
                if !visited[e] {
                    visited[e] = true;
                    remaining -= 1;
                }
                nodes.push(v);
            }
        }
        let cur = *nodes.last().expect("non-empty walk");
        let back = self.bfs_path(cur, allowed, |v| v == base, 1).expect("strong connectivity");
        nodes.extend_from_slice(&back[1..]);
        Ok(nodes)
    }
}

/// A tight walk with its metadata. `length` counts vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCertificate {
    pub sequence: Vec<usize>,
    pub closed: bool,
    pub length: usize,
    pub congruence: usize,
    #[serde(default)]
    pub visited_edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl WalkCertificate {
    /// Builds the certificate of a walk given by its vertex sequence,
    /// computing the metadata from `h.k()`.
    pub fn new(k: usize, sequence: Vec<usize>, closed: bool) -> WalkCertificate {
        let length = sequence.len();
        let visited_edges = windows(&sequence, k, closed)
            .into_iter()
            .map(|mut w| {
                w.sort_unstable();
                w
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        WalkCertificate { sequence, closed, length, congruence: length % k, visited_edges, flags: Vec::new() }
    }

    /// Closed walk from a node cycle `n₀, …, n_ℓ = n₀`.
    fn closed_from_nodes(h: &KGraph, d: &OrderedCliqueDigraph, cycle: &[usize]) -> WalkCertificate {
        let seq = cycle[..cycle.len() - 1].iter().map(|&v| d.tuple(v)[0]).collect();
        WalkCertificate::new(h.k(), seq, true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("walk serializes")
    }
}

fn windows(seq: &[usize], k: usize, closed: bool) -> Vec<Vec<usize>> {
    let len = seq.len();
    if closed {
        if len == 0 {
            return Vec::new();
        }
        (0..len).map(|i| (0..k).map(|j| seq[(i + j) % len]).collect()).collect()
    } else if len < k {
        Vec::new()
    } else {
        seq.windows(k).map(|w| w.to_vec()).collect()
    }
}

/// Checks every (cyclic, if closed) window of `k` consecutive vertices and
/// the stated metadata.
pub fn verify_walk(h: &KGraph, w: &WalkCertificate) -> bool {
    let k = h.k();
    if w.length != w.sequence.len() || w.congruence != w.length % k || w.sequence.len() < k {
        return false;
    }
    let wins = windows(&w.sequence, k, w.closed);
    let mut seen = BTreeSet::new();
    for win in wins {
        let mut s = win.clone();
        s.sort_unstable();
        if s.windows(2).any(|p| p[0] == p[1]) || !h.contains(&s) {
            return false;
        }
        seen.insert(s);
    }
    w.visited_edges.is_empty() || w.visited_edges.iter().cloned().collect::<BTreeSet<_>>() == seen
}

/// Tight component id of every edge.
pub fn tight_components(h: &KGraph) -> Result<Vec<usize>> {
    Ok(TightAnalysis::new(h)?.component_of_edge)
}

pub fn period(h: &KGraph, component: usize) -> Result<PeriodInfo> {
    TightAnalysis::new(h)?.period(component)
}

fn require_tightly_connected(h: &KGraph, a: &TightAnalysis) -> Result<()> {
    if h.edge_count() == 0 || !a.is_tightly_connected() {
        return Err(Error::pre(format!("hypergraph has {} tight components, need exactly 1", a.component_count)));
    }
    Ok(())
}

/// Upper bound `k²tᵏ + k·C(t,k)·tᵏ` on the length of a covering closed walk.
pub fn closed_walk_bound(k: usize, t: usize) -> u128 {
    let tk = (t as u128).pow(k as u32);
    let binom = binomial(t as u128, k as u128);
    (k as u128).pow(2) * tk + k as u128 * binom * tk
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed tight walk visiting every edge, with length `≡ q (mod k)` when
/// `q` is given.
pub fn closed_walk_all_edges(h: &KGraph, q: Option<usize>) -> Result<WalkCertificate> {
    let a = TightAnalysis::new(h)?;
    require_tightly_connected(h, &a)?;
    let k = h.k();
    let (base, cycle) = match q {
        None => (0, None),
        Some(q) => {
            if q >= k {
                return Err(Error::invalid(format!("congruence {q} outside 0..{k}")));
            }
            let root = a.coprime_root(0).ok_or_else(|| Error::pre("no closed walk of length coprime to k"))?;
            let cycle = a.coprime_cycle_at(root).expect("coprime piece has a coprime cycle");
            (root, Some((q, cycle)))
        }
    };
    let cover = a.covering_cycle(base, h.edge_count())?;
    let mut nodes: Vec<usize> = Vec::new();
    if let Some((q, cycle)) = cycle {
        let len_w = cover.len() - 1;
        let len_c = cycle.len() - 1;
        let reps = (0..k).find(|&r| (len_w + r * len_c) % k == q).expect("coprime length reaches every class");
        for _ in 0..reps {
            nodes.extend_from_slice(&cycle[..len_c]);
        }
    }
    nodes.extend_from_slice(&cover);
    let cert = WalkCertificate::closed_from_nodes(h, &a.digraph, &nodes);
    let bound = closed_walk_bound(k, h.n());
    if cert.length as u128 > bound {
        return Err(Error::infeasible(format!("walk length {} exceeds bound {bound}", cert.length)));
    }
    Ok(cert)
}

/// Closed walk that contains `prefix` as a subwalk and visits every edge;
/// the returned sequence starts with `prefix`.
pub fn spanning_walk_with_prefix(h: &KGraph, prefix: &[usize]) -> Result<WalkCertificate> {
    let a = TightAnalysis::new(h)?;
    let base = a.digraph.node_of(prefix).ok_or_else(|| Error::pre(format!("{prefix:?} is not an ordered edge")))?;
    require_tightly_connected(h, &a)?;
    let cover = a.covering_cycle(base, h.edge_count())?;
    Ok(WalkCertificate::closed_from_nodes(h, &a.digraph, &cover))
}

/// Guard on `k·tᵏ` for exact-length walks.
pub const EXACT_WALK_LIMIT: u128 = 10_000_000;

/// Flag set when the final padding exceeds `tᵏ/2` vertices.
pub const PADDING_FLAG: &str = "padding-exceeds-half-t-pow-k";

/// Open tight walk of exactly `k·tᵏ` vertices that starts with `e1` and ends
/// with `e2`, where `e2` orders `k` vertices of the `(k+1)`-clique `clique`.
pub fn walk_between(h: &KGraph, e1: &[usize], e2: &[usize], clique: &[usize]) -> Result<WalkCertificate> {
    let k = h.k();
    let t = h.n();
    if t < 2 * k {
        return Err(Error::pre(format!("need t ≥ 2k, got t={t}, k={k}")));
    }
    let target = (k as u128) * (t as u128).pow(k as u32);
    if target > EXACT_WALK_LIMIT {
        return Err(Error::guard(format!("k·t^k = {target} exceeds {EXACT_WALK_LIMIT}")));
    }
    let mut kset = clique.to_vec();
    kset.sort_unstable();
    if !is_clique_of(h, &kset) {
        return Err(Error::pre(format!("{clique:?} is not a (k+1)-clique")));
    }
    if e2.len() != k || e2.iter().any(|v| !kset.contains(v)) || e2.iter().collect::<BTreeSet<_>>().len() != k {
        return Err(Error::pre("e2 must order k distinct clique vertices"));
    }
    let a = TightAnalysis::new(h)?;
    require_tightly_connected(h, &a)?;
    let start = a.digraph.node_of(e1).ok_or_else(|| Error::pre(format!("{e1:?} is not an ordered edge")))?;
    let mut e2_set = e2.to_vec();
    e2_set.sort_unstable();
    let target_edge = h.edge_id(&e2_set).expect("clique subsets are edges");
    let path = a
        .bfs_path(start, |_| true, |v| a.digraph.edge_of(v) == target_edge, 0)
        .ok_or_else(|| Error::pre("e2 unreachable from e1"))?;
    let mut seq = e1.to_vec();
    for &v in &path[1..] {
        seq.push(*a.digraph.tuple(v).last().expect("k ≥ 1"));
    }
    // Swap gadget inside the clique: move each position into place.
    let spare = *kset.iter().find(|v| !e2.contains(v)).expect("clique has k+1 vertices");
    let mut cur: Vec<usize> = seq[seq.len() - k..].to_vec();
    for i in 0..k {
        if cur[i] == e2[i] {
            continue;
        }
        let j = (i + 1..k).find(|&j| cur[j] == e2[i]).expect("same vertex set");
        let mut mid = cur.clone();
        mid[i] = spare;
        mid[j] = cur[i];
        let mut swapped = cur.clone();
        swapped.swap(i, j);
        seq.extend_from_slice(&mid);
        seq.extend_from_slice(&swapped);
        cur = swapped;
    }
    while seq.len() % k != 0 {
        seq.push(spare);
        seq.extend_from_slice(e2);
    }
    let target = target as usize;
    if seq.len() > target {
        return Err(Error::infeasible(format!("walk of {} vertices already exceeds k·t^k = {target}", seq.len())));
    }
    let padding = target - seq.len();
    while seq.len() < target {
        seq.extend_from_slice(e2);
    }
    let mut cert = WalkCertificate::new(k, seq, false);
    if 2 * padding > (t as u128).pow(k as u32) as usize {
        cert.flags.push(PADDING_FLAG.to_string());
    }
    Ok(cert)
}

/// Outcome of the `Ĥ[U]` connectivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reachability {
    pub hypotheses_met: bool,
    pub unmet_reason: Option<String>,
    pub part_connected: Vec<bool>,
}

impl Reachability {
    pub fn holds(&self) -> bool {
        self.hypotheses_met && self.part_connected.iter().all(|&c| c)
    }
}

/// Whether `Ĥ[U]` is connected for every part `U`. When the hypotheses (no
/// isolated vertices, tightly connected, aperiodic if unpartitioned) fail,
/// the connectivity is still reported but flagged as unsupported.
pub fn hat_reachability_check(h: &KGraph) -> Result<Reachability> {
    let parts = h.parts();
    let r = parts.len();
    if r != 1 && r != h.k() {
        return Err(Error::invalid(format!("partition has {r} parts; need 1 or k={}", h.k())));
    }
    let hat = hat_graph(h);
    let part_connected = parts.iter().map(|u| hat.induced(u).is_connected()).collect();
    let mut reason = None;
    if !h.is_spanning() {
        reason = Some("isolated vertex".to_string());
    } else {
        let a = TightAnalysis::new(h)?;
        if h.edge_count() == 0 || !a.is_tightly_connected() {
            reason = Some("not tightly connected".to_string());
        } else if r == 1 && !a.period(0)?.aperiodic_mod_k {
            reason = Some("no closed walk of length coprime to k".to_string());
        }
    }
    Ok(Reachability { hypotheses_met: reason.is_none(), unmet_reason: reason, part_connected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hypergraph::build_clique_hypergraph;

    fn kg(k: usize, n: usize, edges: &[&[usize]]) -> KGraph {
        KGraph::new(k, n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn node_ids_round_trip() {
        let h = build_clique_hypergraph(&Graph::complete(5), 3);
        let d = OrderedCliqueDigraph::new(&h).unwrap();
        assert_eq!(d.node_count(), 60);
        for v in 0..d.node_count() {
            assert_eq!(d.node_of(&d.tuple(v)), Some(v));
        }
    }

    #[test]
    fn component_examples() {
        assert_eq!(tight_components(&kg(3, 4, &[&[0, 1, 2], &[1, 2, 3]])).unwrap(), vec![0, 0]);
        assert_eq!(tight_components(&kg(3, 6, &[&[0, 1, 2], &[3, 4, 5]])).unwrap(), vec![0, 1]);
        assert_eq!(tight_components(&KGraph::from(&Graph::path(3))).unwrap(), vec![0, 0]);
    }

    #[test]
    fn period_examples() {
        let c5 = KGraph::from(&Graph::cycle(5));
        assert!(period(&c5, 0).unwrap().aperiodic_mod_k);
        let c4 = KGraph::from(&Graph::cycle(4));
        let p = period(&c4, 0).unwrap();
        assert!(!p.aperiodic_mod_k);
        assert_eq!(p.period, 2);
        let k3k4 = build_clique_hypergraph(&Graph::complete(4), 3);
        assert!(period(&k3k4, 0).unwrap().aperiodic_mod_k);
        assert!(period(&c5, 3).is_err());
    }

    #[test]
    fn single_triangle_walk() {
        let h = kg(3, 3, &[&[0, 1, 2]]);
        let w = closed_walk_all_edges(&h, None).unwrap();
        assert_eq!(w.length, 3);
        assert!(verify_walk(&h, &w));
        let w = spanning_walk_with_prefix(&h, &[1, 0, 2]).unwrap();
        assert_eq!(w.sequence, vec![1, 0, 2]);
    }

    #[test]
    fn congruent_covering_walks() {
        let c5 = KGraph::from(&Graph::cycle(5));
        let w = closed_walk_all_edges(&c5, Some(1)).unwrap();
        assert!(verify_walk(&c5, &w));
        assert_eq!(w.congruence, 1);
        assert_eq!(w.visited_edges.len(), 5);
        assert!(w.length as u128 <= 600);

        let k3k4 = build_clique_hypergraph(&Graph::complete(4), 3);
        for q in 0..3 {
            let w = closed_walk_all_edges(&k3k4, Some(q)).unwrap();
            assert!(verify_walk(&k3k4, &w));
            assert_eq!(w.congruence, q);
            assert_eq!(w.visited_edges.len(), 4);
            assert!(w.length as u128 <= 9 * 64 + 3 * 4 * 64);
        }
        let c4 = KGraph::from(&Graph::cycle(4));
        assert!(closed_walk_all_edges(&c4, Some(1)).is_err());
        assert!(closed_walk_all_edges(&c4, None).is_ok());
    }

    #[test]
    fn prefix_walks() {
        let two = kg(3, 4, &[&[0, 1, 2], &[1, 2, 3]]);
        let w = spanning_walk_with_prefix(&two, &[2, 0, 1]).unwrap();
        assert!(verify_walk(&two, &w));
        assert_eq!(&w.sequence[..3], &[2, 0, 1]);
        assert_eq!(w.visited_edges.len(), 2);
        let c5 = KGraph::from(&Graph::cycle(5));
        let w = spanning_walk_with_prefix(&c5, &[0, 1]).unwrap();
        assert_eq!(&w.sequence[..2], &[0, 1]);
        assert_eq!(w.visited_edges.len(), 5);
        assert!(spanning_walk_with_prefix(&c5, &[0, 2]).is_err());
    }

    #[test]
    fn exact_length_walks() {
        let k5 = KGraph::from(&Graph::complete(5));
        let w = walk_between(&k5, &[3, 4], &[1, 0], &[0, 1, 2]).unwrap();
        assert_eq!(w.length, 50);
        assert!(verify_walk(&k5, &w));
        assert_eq!(&w.sequence[..2], &[3, 4]);
        assert_eq!(&w.sequence[48..], &[1, 0]);
        let w = walk_between(&k5, &[0, 1], &[0, 1], &[0, 1, 2]).unwrap();
        assert_eq!(w.length, 50);

        let k6 = build_clique_hypergraph(&Graph::complete(6), 3);
        let w = walk_between(&k6, &[5, 3, 4], &[2, 0, 1], &[0, 1, 2, 3]).unwrap();
        assert_eq!(w.length, 648);
        assert!(verify_walk(&k6, &w));
        assert_eq!(&w.sequence[645..], &[2, 0, 1]);
        assert!(walk_between(&build_clique_hypergraph(&Graph::complete(5), 3), &[0, 1, 2], &[0, 1, 2], &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn verify_examples() {
        let k3k4 = build_clique_hypergraph(&Graph::complete(4), 3);
        let w = WalkCertificate::new(3, vec![0, 1, 2, 3], true);
        assert!(verify_walk(&k3k4, &w));
        let missing = k3k4.filter(|e| e != [0, 1, 2]);
        assert!(!verify_walk(&missing, &w));
        let mut bad = w.clone();
        bad.congruence = 2;
        assert!(!verify_walk(&k3k4, &bad));
    }

    #[test]
    fn reachability_examples() {
        let k3k4 = build_clique_hypergraph(&Graph::complete(4), 3);
        assert!(hat_reachability_check(&k3k4).unwrap().holds());
        assert!(hat_reachability_check(&KGraph::from(&Graph::cycle(5))).unwrap().holds());
        let c4 = Graph::cycle(4).with_partition(vec![vec![0, 2], vec![1, 3]]).unwrap();
        let r = hat_reachability_check(&KGraph::from(&c4)).unwrap();
        assert!(r.holds());
        assert_eq!(r.part_connected, vec![true, true]);
        let unmet = hat_reachability_check(&KGraph::from(&Graph::cycle(4))).unwrap();
        assert!(!unmet.hypotheses_met);
    }
}
