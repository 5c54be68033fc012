use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{certify_framework, Verdict, Want};
use crate::error::{Error, Result};
use crate::graph::{is_approximation, Graph};
use crate::hypergraph::{linked_edge_profile, KGraph};
use crate::matching::max_fractional_matching;
use crate::rational::{floor_i64, qu, serde_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Random,
    AdversarialStructured,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub passed: bool,
    pub deleted_vertices: Vec<usize>,
    pub deleted_edges: Vec<(usize, usize)>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct RobustnessReport {
    #[serde(with = "serde_q")]
    pub mu: Q,
    /// Every vertex has at least `μnᵏ` linked edges.
    pub linked_edges_hold: bool,
    pub linked_min: usize,
    pub trials: Vec<TrialOutcome>,
    pub all_trials_passed: bool,
    /// First failing approximation: surviving vertex ids and the graph on them.
    pub counterexample: Option<serde_json::Value>,
}

/// Deletion bookkeeping that keeps the result a `(μ,μ)`-approximation.
struct Deletion<'a> {
    g: &'a Graph,
    part_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
    cap: Vec<usize>,
    loss: Vec<Vec<usize>>,
    alive: Vec<bool>,
    removed: BTreeSet<(usize, usize)>,
    gone_per_part: Vec<usize>,
}

impl<'a> Deletion<'a> {
    fn new(g: &'a Graph, mu: &Q) -> Deletion<'a> {
        let parts = g.parts();
        let mut part_of = vec![0; g.n()];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                part_of[v] = i;
            }
        }
        let cap = parts.iter().map(|p| floor_i64(&(mu * qu(p.len()))).max(0) as usize).collect();
        Deletion {
            g,
            part_of,
            cap,
            loss: vec![vec![0; parts.len()]; g.n()],
            alive: vec![true; g.n()],
            removed: BTreeSet::new(),
            gone_per_part: vec![0; parts.len()],
            parts,
        }
    }

    fn present(&self, u: usize, v: usize) -> bool {
        self.alive[u] && self.alive[v] && !self.removed.contains(&(u.min(v), u.max(v)))
    }

    fn can_delete_vertex(&self, w: usize) -> bool {
        let p = self.part_of[w];
        self.alive[w]
            && self.gone_per_part[p] < self.cap[p]
            && self.g.neighbors(w).iter().all(|&u| !self.present(u, w) || self.loss[u][p] < self.cap[p])
    }

    fn delete_vertex(&mut self, w: usize) {
        let p = self.part_of[w];
        for &u in self.g.neighbors(w) {
            if self.present(u, w) {
                self.loss[u][p] += 1;
            }
        }
        self.alive[w] = false;
        self.gone_per_part[p] += 1;
    }

    /// Deletes one vertex from every part, preferring `first` in its own part.
    fn delete_round(&mut self, first: Option<usize>, order: &[usize]) -> bool {
        let mut pick = Vec::with_capacity(self.parts.len());
        for p in 0..self.parts.len() {
            let preferred = first.filter(|&w| self.part_of[w] == p && self.can_delete_vertex(w));
            let choice = preferred.or_else(|| {
                order.iter().copied().find(|&w| self.part_of[w] == p && self.can_delete_vertex(w))
            });
            match choice {
                Some(w) => pick.push(w),
                None => return false,
            }
        }
        if pick.iter().enumerate().any(|(i, a)| pick[i + 1..].iter().any(|&b| self.g.has_edge(*a, b))) {
            return false;
        }
        for w in pick {
            self.delete_vertex(w);
        }
        true
    }

    fn delete_edge(&mut self, u: usize, v: usize) -> bool {
        let (pu, pv) = (self.part_of[u], self.part_of[v]);
        if !self.present(u, v) || self.loss[u][pv] >= self.cap[pv] || self.loss[v][pu] >= self.cap[pu] {
            return false;
        }
        self.loss[u][pv] += 1;
        self.loss[v][pu] += 1;
        self.removed.insert((u.min(v), u.max(v)));
        true
    }

    fn finish(self) -> (Vec<usize>, Graph, Vec<usize>, Vec<(usize, usize)>) {
        let kept: Vec<usize> = (0..self.g.n()).filter(|&v| self.alive[v]).collect();
        let gone: Vec<usize> = (0..self.g.n()).filter(|&v| !self.alive[v]).collect();
        let mut pos = vec![usize::MAX; self.g.n()];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<(usize, usize)> =
            self.g.edges().filter(|&(u, v)| self.present(u, v)).map(|(u, v)| (pos[u], pos[v])).collect();
        let sub = Graph::from_edges(kept.len(), &edges).expect("subgraph of a simple graph");
        let removed = self.removed.into_iter().filter(|&(u, v)| self.alive[u] && self.alive[v]).collect();
        (kept, sub, gone, removed)
    }
}

fn random_deletion<'a>(g: &'a Graph, mu: &Q, rng: &mut ChaCha8Rng) -> Deletion<'a> {
    let mut del = Deletion::new(g, mu);
    let rounds = rng.gen_range(0..=del.cap.iter().copied().min().unwrap_or(0));
    let mut order: Vec<usize> = (0..g.n()).collect();
    for _ in 0..rounds {
        order.shuffle(rng);
        del.delete_round(None, &order);
    }
    let mut edges = g.edge_vec();
    edges.shuffle(rng);
    for (u, v) in edges {
        if rng.gen_bool(0.5) {
            del.delete_edge(u, v);
        }
    }
    del
}

/// Structured deletions around a low-degree target: its neighbours, its
/// edges, the target and its peers, or edges carrying the most matching weight.
fn structured_deletion<'a>(g: &'a Graph, h: &KGraph, mu: &Q, trial: usize) -> Deletion<'a> {
    let mut del = Deletion::new(g, mu);
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    if by_degree.is_empty() {
        return del;
    }
    let target = by_degree[(trial / 4) % by_degree.len()];
    match trial % 4 {
        0 => {
            for &u in g.neighbors(target) {
                del.delete_round(Some(u), &by_degree);
            }
        }
        1 => {
            for &u in g.neighbors(target) {
                del.delete_edge(target, u);
            }
        }
        2 => {
            del.delete_round(Some(target), &by_degree);
            while del.delete_round(None, &by_degree) {}
        }
        _ => {
            let m = max_fractional_matching(h);
            let mut heavy: Vec<(&Vec<usize>, &Q)> = m.weights.iter().collect();
            heavy.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
            for (e, _) in heavy {
                let i = trial / 4 % e.len();
                let j = (i + 1) % e.len();
                del.delete_edge(e[i], e[j]);
            }
        }
    }
    del
}

/// Re-certifies `(G′, H ∩ K_k(G′))` on sampled `(μ,μ)`-approximations `G′`.
/// Trial `i` uses seed `seed ^ i`. Passing trials are evidence, not proof.
pub fn probe_robustness(
    g: &Graph,
    h: &KGraph,
    mu: &Q,
    strategy: Strategy,
    trials: usize,
    seed: u64,
    want: Want,
) -> Result<RobustnessReport> {
    let k = h.k();
    let part_size = g.parts().first().map_or(0, |p| p.len());
    let profile = linked_edge_profile(h);
    let linked_edges_hold = profile.meets(mu, part_size, k);
    let mut outcomes = Vec::with_capacity(trials);
    let mut counterexample = None;
    for trial in 0..trials.max(1) {
        let trial_seed = seed ^ trial as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let del = match strategy {
            Strategy::Random => random_deletion(g, mu, &mut rng),
            Strategy::AdversarialStructured => structured_deletion(g, h, mu, trial),
        };
        let (kept, sub, gone, removed) = del.finish();
        let check = is_approximation(g, &kept, &sub, mu, mu)?;
        if !check.holds {
            return Err(Error::infeasible(format!("probe produced a non-approximation: {:?}", check.violation)));
        }
        let mut pos = vec![None; g.n()];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = Some(i);
        }
        let survivors: Vec<Vec<usize>> = h
            .edges()
            .iter()
            .filter_map(|e| e.iter().map(|&v| pos[v]).collect::<Option<Vec<usize>>>())
            .filter(|e| e.iter().enumerate().all(|(i, &a)| e[i + 1..].iter().all(|&b| sub.has_edge(a, b))))
            .collect();
        let h2 = KGraph::new(k, kept.len(), survivors)?;
        let verdict = certify_framework(&sub, &h2, want)?.verdict;
        let passed = verdict.satisfies(want);
        if !passed && counterexample.is_none() {
            let graph: serde_json::Value = serde_json::from_str(&sub.to_json())?;
            counterexample = Some(serde_json::json!({ "kept": kept, "graph": graph }));
        }
        outcomes.push(TrialOutcome {
            trial,
            seed: trial_seed,
            passed,
            deleted_vertices: gone,
            deleted_edges: removed,
            verdict,
        });
    }
    Ok(RobustnessReport {
        mu: mu.clone(),
        linked_edges_hold,
        linked_min: profile.min(),
        all_trials_passed: outcomes.iter().all(|t| t.passed),
        trials: outcomes,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::build_clique_hypergraph;
    use crate::rational::{q, qi};

    #[test]
    fn zero_budget_tests_only_g() {
        let g = Graph::cycle(5);
        let h = build_clique_hypergraph(&g, 2);
        let r = probe_robustness(&g, &h, &qi(0), Strategy::Random, 3, 7, Want::default()).unwrap();
        assert!(r.all_trials_passed);
        assert!(r.trials.iter().all(|t| t.deleted_vertices.is_empty() && t.deleted_edges.is_empty()));
    }

    #[test]
    fn complete_graph_survives() {
        let g = Graph::complete(10);
        let h = build_clique_hypergraph(&g, 2);
        let want = Want { aperiodic: true, zero_free: false };
        for strategy in [Strategy::Random, Strategy::AdversarialStructured] {
            let r = probe_robustness(&g, &h, &q(1, 10), strategy, 8, 1, want).unwrap();
            assert!(r.all_trials_passed, "{strategy:?}");
        }
    }

    #[test]
    fn deletions_stay_within_budget() {
        let g = Graph::complete(12);
        let h = build_clique_hypergraph(&g, 2);
        let r = probe_robustness(&g, &h, &q(1, 6), Strategy::Random, 10, 3, Want::default()).unwrap();
        assert!(r.trials.iter().all(|t| t.deleted_vertices.len() <= 2));
    }
}
