//! End-to-end analysis: clique hypergraph, tight components, per-component
//! framework certificates, and the comparison against the oracle.

use num_integer::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::framework::{certify_with, probe_robustness, FrameworkCertificate, RobustnessReport, Strategy, Want};
use crate::graph::Graph;
use crate::hypergraph::{build_clique_hypergraph, KGraph};
use crate::oracle::{find_power_ham_cycle, OracleVerdict};
use crate::rational::Q;
use crate::walks::{verify_walk, TightAnalysis};

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub id: usize,
    pub edges: usize,
    pub spanning: bool,
    pub perfect_matching: bool,
    pub period: usize,
    pub aperiodic: bool,
    pub zero_free: bool,
    pub framework: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub k: usize,
    pub n: usize,
    pub cliques: usize,
    pub component_count: usize,
    pub components: Vec<ComponentReport>,
    /// Component with the strongest verdict, ties to the larger component.
    pub best: Option<usize>,
    pub certificate: Option<FrameworkCertificate>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn best_report(&self) -> Option<&ComponentReport> {
        self.best.map(|b| &self.components[b])
    }

    /// Human-readable table, one row per component.
    pub fn table(&self) -> String {
        let mut s = format!("k = {}, n = {}, {} cliques, {} tight components\n", self.k, self.n, self.cliques, self.component_count);
        s.push_str("comp  edges  span  pfm  period  aper  zfree  framework\n");
        for c in &self.components {
            let yn = |b: bool| if b { "yes" } else { "no" };
            s.push_str(&format!(
                "{:>4}  {:>5}  {:>4}  {:>3}  {:>6}  {:>4}  {:>5}  {}{}\n",
                c.id,
                c.edges,
                yn(c.spanning),
                yn(c.perfect_matching),
                c.period,
                yn(c.aperiodic),
                yn(c.zero_free),
                yn(c.framework),
                if Some(c.id) == self.best { "  *" } else { "" }
            ));
        }
        s
    }
}

/// Certificate for one tight component of `K_k(G)` taken as `H`, reusing
/// the analysis of the whole clique hypergraph.
fn certify_component(g: &Graph, kg: &KGraph, analysis: &TightAnalysis, comp: usize) -> Result<FrameworkCertificate> {
    let k = kg.k();
    let h = kg.sub(&analysis.members(comp));
    let mut cert = certify_with(g, &h, kg, analysis, Want { aperiodic: false, zero_free: true })?;
    let walk = analysis.coprime_walk(kg, comp).filter(|w| w.closed && w.length.gcd(&k) == 1 && verify_walk(&h, w));
    cert.verdict.aperiodic = cert.verdict.framework && walk.is_some();
    cert.aperiodic_walk = walk;
    Ok(cert)
}

fn rank(c: &ComponentReport) -> (bool, bool, bool, usize) {
    (c.framework, c.aperiodic, c.zero_free, c.edges)
}

/// Builds `K_k(G)`, splits it into tight components and certifies each as a
/// framework candidate. Polynomial throughout; the oracle is never called.
pub fn analyze(g: &Graph, k: usize) -> Result<AnalysisReport> {
    let kg = build_clique_hypergraph(g, k);
    let analysis = TightAnalysis::new(&kg)?;
    let mut components = Vec::with_capacity(analysis.component_count);
    let mut certs = Vec::with_capacity(analysis.component_count);
    for comp in 0..analysis.component_count {
        let cert = certify_component(g, &kg, &analysis, comp)?;
        let info = analysis.period(comp)?;
        components.push(ComponentReport {
            id: comp,
            edges: analysis.members(comp).len(),
            spanning: cert.spanning,
            perfect_matching: cert.perfect_matching,
            period: info.period,
            aperiodic: cert.verdict.aperiodic,
            zero_free: cert.verdict.zero_free,
            framework: cert.verdict.framework,
        });
        certs.push(cert);
    }
    let best = components.iter().max_by(|a, b| rank(a).cmp(&rank(b)).then(b.id.cmp(&a.id))).map(|c| c.id);
    let certificate = best.map(|b| certs.swap_remove(b));
    Ok(AnalysisReport { k, n: g.n(), cliques: kg.edge_count(), component_count: analysis.component_count, components, best, certificate })
}

/// Robustness probe settings for `compare`.
#[derive(Clone, Debug)]
pub struct ProbeSpec {
    pub mu: Q,
    pub strategy: Strategy,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub framework: bool,
    pub aperiodic: bool,
    pub zero_free: bool,
    pub robust: Option<bool>,
    pub oracle: OracleVerdict,
    #[serde(skip)]
    pub analysis: AnalysisReport,
    #[serde(skip)]
    pub probe: Option<RobustnessReport>,
}

impl Comparison {
    pub fn table(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let oracle = if self.oracle.timed_out {
            "budget"
        } else {
            yn(self.oracle.found)
        };
        let robust = self.robust.map_or("-", yn);
        format!(
            "framework  aperiodic  zero-free  robust  oracle\n{:>9}  {:>9}  {:>9}  {:>6}  {:>6}\n",
            yn(self.framework),
            yn(self.aperiodic),
            yn(self.zero_free),
            robust,
            oracle
        )
    }
}

/// Framework verdict of the best component next to the oracle's answer on
/// whether `G` holds the `(k−1)`th power of a Hamilton cycle.
pub fn compare(g: &Graph, k: usize, budget: u64, probe: Option<&ProbeSpec>) -> Result<Comparison> {
    let analysis = analyze(g, k)?;
    let best = analysis.best_report();
    let (framework, aperiodic, zero_free) = best.map_or((false, false, false), |c| (c.framework, c.aperiodic, c.zero_free));
    let probe = match (probe, best) {
        (Some(p), Some(c)) => {
            let kg = build_clique_hypergraph(g, k);
            let analysis = TightAnalysis::new(&kg)?;
            let h = kg.sub(&analysis.members(c.id));
            let want = Want { aperiodic: true, zero_free: false };
            Some(probe_robustness(g, &h, &p.mu, p.strategy, p.trials, p.seed, want)?)
        }
        _ => None,
    };
    let robust = probe.as_ref().map(|r| r.all_trials_passed);
    let oracle = find_power_ham_cycle(g, k, budget);
    Ok(Comparison { framework, aperiodic, zero_free, robust, oracle, analysis, probe })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_and_even_cycles() {
        let r = analyze(&Graph::cycle(5), 2).unwrap();
        assert_eq!(r.component_count, 1);
        let c = r.best_report().unwrap();
        assert!(c.framework && c.aperiodic && c.perfect_matching);
        let r = analyze(&Graph::cycle(4), 2).unwrap();
        let c = r.best_report().unwrap();
        assert!(c.framework && !c.aperiodic);
        assert_eq!(c.period, 2);
    }

    #[test]
    fn k6_compares_positive() {
        let c = compare(&Graph::complete(6), 3, 1_000_000, None).unwrap();
        assert!(c.framework && c.aperiodic && c.oracle.found);
    }

    #[test]
    fn empty_graph() {
        let r = analyze(&Graph::empty(4), 2).unwrap();
        assert_eq!(r.component_count, 0);
        assert!(r.best.is_none());
    }
}
