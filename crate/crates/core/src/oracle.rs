//! Brute-force ground truth. Nothing here calls into the walk, matching-search
//! or framework modules except the shared exact LP; disagreements with those
//! modules are bugs in one of the two.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::Verdict;
use crate::graph::Graph;
use crate::hypergraph::{build_clique_hypergraph, KGraph};
use crate::matching::has_perfect_fractional_matching;

/// Largest graph the bitmask searches accept.
pub const MAX_ORACLE_N: usize = 128;

/// Size guard for `framework_bruteforce`: `k!·|E(H)|`.
pub const BRUTEFORCE_LIMIT: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub found: bool,
    /// Cyclic vertex order, or the cliques of a factor.
    pub witness: Option<Vec<Vec<usize>>>,
    pub nodes_explored: u64,
    pub timed_out: bool,
}

impl OracleVerdict {
    fn none(nodes: u64, timed_out: bool) -> OracleVerdict {
        OracleVerdict { found: false, witness: None, nodes_explored: nodes, timed_out }
    }
}

fn masks(g: &Graph) -> Vec<u128> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u128, |m, &u| m | 1 << u)).collect()
}

/// Whether every pair at cyclic distance at most `k − 1` in `order` is an
/// edge of `g`.
pub fn verify_power_ham_cycle(g: &Graph, order: &[usize], k: usize) -> Result<bool> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::invalid("order is not a permutation of V(G)"));
    }
    for p in 0..n {
        for d in 1..k.min(n) {
            if !g.has_edge(order[p], order[(p + d) % n]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct PowerSearch {
    n: usize,
    k: usize,
    adj: Vec<u128>,
    order: Vec<usize>,
    placed: u128,
    nodes: u64,
    budget: u64,
}

impl PowerSearch {
    /// Vertices that must be adjacent to whatever lands on position `p`.
    fn required(&self, p: usize) -> u128 {
        let mut m = 0u128;
        for d in 1..self.k.min(p + 1) {
            m |= 1 << self.order[p - d];
        }
        // Wrap-around: position p also sees positions 0..p+k−1−n.
        for q in 0..(p + self.k).saturating_sub(self.n).min(self.order.len()) {
            m |= 1 << self.order[q];
        }
        m
    }

    /// Every unplaced vertex still needs `2(k−1)` neighbours among the
    /// unplaced vertices, the last `k−1` placed and the first `k−1` placed.
    fn feasible(&self) -> bool {
        let p = self.order.len();
        let mut open = !self.placed & mask_below(self.n);
        for &v in self.order.iter().skip(p.saturating_sub(self.k - 1)).chain(self.order.iter().take(self.k - 1)) {
            open |= 1 << v;
        }
        let need = (2 * (self.k - 1)).min(self.n - 1) as u32;
        let mut rest = !self.placed & mask_below(self.n);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[v] & open).count_ones() < need {
                return false;
            }
        }
        true
    }

    fn search(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let p = self.order.len();
        if p == self.n {
            return Some(true);
        }
        if !self.feasible() {
            return Some(false);
        }
        let req = self.required(p);
        let mut cand = !self.placed & mask_below(self.n);
        let mut r = req;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            cand &= self.adj[v];
        }
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.order.push(v);
            self.placed |= 1 << v;
            match self.search() {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.order.pop();
            self.placed &= !(1 << v);
        }
        Some(false)
    }
}

fn mask_below(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Backtracking over cyclic orders starting at a minimum-degree vertex, with
/// window and wrap-around pruning. `budget` counts search nodes.
pub fn find_power_ham_cycle(g: &Graph, k: usize, budget: u64) -> OracleVerdict {
    let n = g.n();
    if n < 3 || k < 2 {
        return OracleVerdict::none(0, false);
    }
    if n > MAX_ORACLE_N {
        return OracleVerdict::none(0, true);
    }
    if g.min_degree() < (2 * (k - 1)).min(n - 1) {
        return OracleVerdict::none(0, false);
    }
    let start = (0..n).min_by_key(|&v| g.degree(v)).expect("n ≥ 3");
    let mut s = PowerSearch { n, k, adj: masks(g), order: vec![start], placed: 1 << start, nodes: 0, budget };
    match s.search() {
        None => OracleVerdict::none(s.nodes, true),
        Some(false) => OracleVerdict::none(s.nodes, false),
        Some(true) => {
            debug_assert!(verify_power_ham_cycle(g, &s.order, k).unwrap_or(false));
            OracleVerdict { found: true, witness: Some(vec![s.order]), nodes_explored: s.nodes, timed_out: false }
        }
    }
}

struct FactorSearch {
    k: usize,
    adj: Vec<u128>,
    free: u128,
    cliques: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl FactorSearch {
    fn search(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if self.free == 0 {
            return Some(true);
        }
        let v = self.free.trailing_zeros() as usize;
        let mut clique = vec![v];
        let pool = self.adj[v] & self.free;
        self.extend(&mut clique, pool)
    }

    fn extend(&mut self, clique: &mut Vec<usize>, pool: u128) -> Option<bool> {
        if clique.len() == self.k {
            let mask = clique.iter().fold(0u128, |m, &u| m | 1 << u);
            self.free &= !mask;
            self.cliques.push(clique.clone());
            let r = self.search();
            if r != Some(true) {
                self.cliques.pop();
                self.free |= mask;
            }
            return r;
        }
        let last = *clique.last().expect("non-empty");
        // Members are added in increasing order after the anchor.
        let mut c = pool & !mask_below(last + 1);
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            c &= c - 1;
            clique.push(u);
            let r = self.extend(clique, pool & self.adj[u]);
            clique.pop();
            if r != Some(false) {
                return r;
            }
        }
        Some(false)
    }
}

/// Exact search for `n/k` vertex-disjoint `k`-cliques.
pub fn find_clique_factor(g: &Graph, k: usize, budget: u64) -> Result<OracleVerdict> {
    let n = g.n();
    if k == 0 || n % k != 0 {
        return Err(Error::invalid(format!("k = {k} does not divide n = {n}")));
    }
    if n > MAX_ORACLE_N {
        return Ok(OracleVerdict::none(0, true));
    }
    let mut s = FactorSearch { k, adj: masks(g), free: mask_below(n), cliques: Vec::new(), nodes: 0, budget };
    Ok(match s.search() {
        None => OracleVerdict::none(s.nodes, true),
        Some(false) => OracleVerdict::none(s.nodes, false),
        Some(true) => OracleVerdict { found: true, witness: Some(s.cliques), nodes_explored: s.nodes, timed_out: false },
    })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// Component label of every edge of `h`, where two edges are joined when
/// they share exactly `k − 1` vertices. Consecutive edges of a tight walk
/// overlap in `k − 1` vertices, and any two such edges `e, f` lie on the
/// tight walk `e∖f, e∩f, f∖e` and its reverse, so these are the tight
/// components.
pub fn overlap_components(h: &KGraph) -> (Vec<usize>, usize) {
    let m = h.edge_count();
    let mut parent: Vec<usize> = (0..m).collect();
    let mut bucket: HashMap<Vec<usize>, usize> = HashMap::new();
    for (id, e) in h.edges().iter().enumerate() {
        for skip in 0..e.len() {
            let key: Vec<usize> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            match bucket.get(&key) {
                Some(&other) => {
                    let (a, b) = (find(&mut parent, id), find(&mut parent, other));
                    parent[a] = b;
                }
                None => {
                    bucket.insert(key, id);
                }
            }
        }
    }
    let mut label = vec![usize::MAX; m];
    let mut names: HashMap<usize, usize> = HashMap::new();
    for id in 0..m {
        let root = find(&mut parent, id);
        let next = names.len();
        label[id] = *names.entry(root).or_insert(next);
    }
    let count = names.len();
    (label, count)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Whether `h` has a closed tight walk whose length is coprime to `k`, by
/// breadth-first search over (ordered edge, length mod k) from every start.
pub fn aperiodic_by_enumeration(h: &KGraph) -> Result<bool> {
    let k = h.k();
    let size = factorial(k).saturating_mul(h.edge_count());
    if size > BRUTEFORCE_LIMIT {
        return Err(Error::guard(format!("k!·|E| = {size} exceeds {BRUTEFORCE_LIMIT}")));
    }
    let tuples: Vec<Vec<usize>> = h.edges().iter().flat_map(|e| permutations(e)).collect();
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let succ: Vec<Vec<usize>> = tuples
        .iter()
        .map(|t| {
            (0..h.n())
                .filter(|v| !t[1..].contains(v))
                .filter_map(|v| {
                    let mut next = t[1..].to_vec();
                    next.push(v);
                    index.get(next.as_slice()).copied()
                })
                .collect()
        })
        .collect();
    for s in 0..tuples.len() {
        let mut seen = vec![false; tuples.len() * k];
        let mut queue = VecDeque::new();
        for &t in &succ[s] {
            if !seen[t * k + 1 % k] {
                seen[t * k + 1 % k] = true;
                queue.push_back((t, 1 % k));
            }
        }
        while let Some((t, r)) = queue.pop_front() {
            if t == s && r.gcd(&k) == 1 {
                return Ok(true);
            }
            for &u in &succ[t] {
                let nr = (r + 1) % k;
                if !seen[u * k + nr] {
                    seen[u * k + nr] = true;
                    queue.push_back((u, nr));
                }
            }
        }
    }
    Ok(false)
}

fn has_k_plus_1_clique(h: &KGraph) -> bool {
    let k = h.k();
    let n = h.n();
    let mut set = Vec::with_capacity(k + 1);
    fn rec(h: &KGraph, n: usize, k: usize, from: usize, set: &mut Vec<usize>) -> bool {
        if set.len() == k + 1 {
            return (0..=k).all(|skip| {
                let e: Vec<usize> = set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                h.contains(&e)
            });
        }
        for v in from..n {
            set.push(v);
            if rec(h, n, k, v + 1, set) {
                return true;
            }
            set.pop();
        }
        false
    }
    rec(h, n, k, 0, &mut set)
}

/// The framework clauses for `(g, h)` re-derived from their definitions.
pub fn framework_bruteforce(g: &Graph, h: &KGraph) -> Result<Verdict> {
    let k = h.k();
    let size = factorial(k).saturating_mul(h.edge_count());
    if size > BRUTEFORCE_LIMIT {
        return Err(Error::guard(format!("k!·|E| = {size} exceeds {BRUTEFORCE_LIMIT}")));
    }
    if h.n() != g.n() {
        return Err(Error::invalid("hypergraph and graph have different vertex counts"));
    }
    let kg = build_clique_hypergraph(g, k);
    let (label, _) = overlap_components(&kg);
    let mut met = Vec::new();
    for e in h.edges() {
        let id = kg.edge_id(e).ok_or_else(|| Error::invalid(format!("{e:?} is not a clique of G")))?;
        met.push(label[id]);
    }
    met.sort_unstable();
    met.dedup();
    let mut covered = vec![false; h.n()];
    for e in h.edges() {
        for &v in e {
            covered[v] = true;
        }
    }
    let spanning = covered.iter().all(|&c| c);
    let (pfm, _) = has_perfect_fractional_matching(h);
    let framework = spanning && met.len() == 1 && pfm;
    let aperiodic = framework && aperiodic_by_enumeration(h)?;
    let zero_free = framework && has_k_plus_1_clique(h);
    Ok(Verdict { framework, aperiodic, zero_free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::blow_up;

    const BUDGET: u64 = 10_000_000;

    #[test]
    fn cycles() {
        let v = find_power_ham_cycle(&Graph::cycle(7), 2, BUDGET);
        assert!(v.found);
        assert!(verify_power_ham_cycle(&Graph::cycle(7), &v.witness.unwrap()[0], 2).unwrap());
        assert!(find_power_ham_cycle(&Graph::complete(6), 3, BUDGET).found);
        assert!(!find_power_ham_cycle(&Graph::cycle(7), 3, BUDGET).found);
        assert!(!find_power_ham_cycle(&Graph::path(5), 2, BUDGET).found);
    }

    #[test]
    fn verify_examples() {
        let c5 = Graph::cycle(5);
        assert!(verify_power_ham_cycle(&c5, &[0, 1, 2, 3, 4], 2).unwrap());
        assert!(!verify_power_ham_cycle(&c5, &[0, 1, 2, 3, 4], 3).unwrap());
        assert!(verify_power_ham_cycle(&Graph::complete(6), &[5, 3, 1, 0, 2, 4], 3).unwrap());
        assert!(verify_power_ham_cycle(&c5, &[0, 1, 2, 3, 3], 2).is_err());
    }

    #[test]
    fn square_cycle_in_blowup() {
        let g = blow_up(&Graph::complete(4), &[3, 3, 3, 3]).unwrap();
        let v = find_power_ham_cycle(&g, 3, BUDGET);
        assert!(v.found && !v.timed_out);
    }

    #[test]
    fn petersen_is_not_hamiltonian() {
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let g = Graph::from_edges(10, &[outer, inner, spokes].concat()).unwrap();
        let v = find_power_ham_cycle(&g, 2, BUDGET);
        assert!(!v.found && !v.timed_out);
    }

    #[test]
    fn budget_exhaustion() {
        let g = Graph::complete(12).remove_edges(&[(0, 1)]);
        let v = find_power_ham_cycle(&g, 6, 3);
        assert!(v.timed_out && !v.found);
    }

    #[test]
    fn clique_factors() {
        let pm = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(find_clique_factor(&pm, 2, BUDGET).unwrap().found);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!find_clique_factor(&star, 2, BUDGET).unwrap().found);
        let b = blow_up(&Graph::complete(3), &[2, 2, 2]).unwrap();
        let v = find_clique_factor(&b, 3, BUDGET).unwrap();
        assert_eq!(v.witness.unwrap().len(), 2);
        assert!(find_clique_factor(&star, 3, BUDGET).is_err());
    }

    #[test]
    fn overlap_on_two_triangles() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let (_, c) = overlap_components(&build_clique_hypergraph(&g, 2));
        assert_eq!(c, 2);
        let (_, c) = overlap_components(&build_clique_hypergraph(&Graph::complete(5), 3));
        assert_eq!(c, 1);
    }

    #[test]
    fn bruteforce_verdicts() {
        let c5 = Graph::cycle(5);
        let v = framework_bruteforce(&c5, &build_clique_hypergraph(&c5, 2)).unwrap();
        assert_eq!(v, Verdict { framework: true, aperiodic: true, zero_free: false });
        let c4 = Graph::cycle(4);
        let v = framework_bruteforce(&c4, &build_clique_hypergraph(&c4, 2)).unwrap();
        assert!(v.framework && !v.aperiodic);
        let k4 = Graph::complete(4);
        let v = framework_bruteforce(&k4, &build_clique_hypergraph(&k4, 3)).unwrap();
        assert_eq!(v, Verdict { framework: true, aperiodic: true, zero_free: true });
    }

    #[test]
    fn size_guard() {
        let g = Graph::complete(20);
        assert!(framework_bruteforce(&g, &build_clique_hypergraph(&g, 3)).is_err());
    }
}
