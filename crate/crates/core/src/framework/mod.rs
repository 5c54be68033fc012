//! Hamilton frameworks: certification, robustness probing, and the classical
//! sufficient conditions.

mod conditions;
mod robust;

use serde::Serialize;

pub use conditions::{
    adherence, deficiency_bounds, dense_check, dense_inseparable_check, inseparable_check, multipartite_check,
    multipartite_degree, ore_check, posa_check, posa_offset_check, robust_expander_check, ConditionReport,
    DeficiencyBounds, EXHAUSTIVE_LIMIT,
};
pub use robust::{probe_robustness, RobustnessReport, Strategy, TrialOutcome};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{build_clique_hypergraph, find_k_plus_1_clique, is_clique_of, linked_edge_profile, KGraph, LinkedEdgeProfile};
use crate::matching::{has_perfect_fractional_matching, FractionalMatching};
use crate::walks::{verify_walk, TightAnalysis, WalkCertificate};

/// Optional framework clauses to witness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Want {
    pub aperiodic: bool,
    pub zero_free: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub framework: bool,
    pub aperiodic: bool,
    pub zero_free: bool,
}

impl Verdict {
    /// Whether the verdict includes everything asked for in `want`.
    pub fn satisfies(&self, want: Want) -> bool {
        self.framework && (!want.aperiodic || self.aperiodic) && (!want.zero_free || self.zero_free)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameworkCertificate {
    pub k: usize,
    pub spanning: bool,
    /// Tight component of `K_k(G)` holding every edge of `H`.
    pub component_witness: Option<usize>,
    pub matching: FractionalMatching,
    pub perfect_matching: bool,
    pub aperiodic_walk: Option<WalkCertificate>,
    pub zero_free_clique: Option<Vec<usize>>,
    pub linked_profile: LinkedEdgeProfile,
    pub verdict: Verdict,
}

impl FrameworkCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Tight component ids of `K_k(G)` met by the edges of `h`, given the
/// analysis of `kg = K_k(G)`.
pub(crate) fn components_met(kg: &KGraph, analysis: &TightAnalysis, h: &KGraph) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    for e in h.edges() {
        let id = kg.edge_id(e).ok_or_else(|| Error::invalid(format!("{e:?} is not a clique of G")))?;
        ids.push(analysis.component_of_edge[id]);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

/// Checks every framework clause for `(g, h)` with independent witnesses.
pub fn certify_framework(g: &Graph, h: &KGraph, want: Want) -> Result<FrameworkCertificate> {
    let k = h.k();
    if h.n() != g.n() {
        return Err(Error::invalid("hypergraph and graph have different vertex counts"));
    }
    let kg = build_clique_hypergraph(g, k);
    let analysis = TightAnalysis::new(&kg)?;
    certify_with(g, h, &kg, &analysis, want)
}

pub(crate) fn certify_with(
    g: &Graph,
    h: &KGraph,
    kg: &KGraph,
    analysis: &TightAnalysis,
    want: Want,
) -> Result<FrameworkCertificate> {
    let k = h.k();
    let met = components_met(kg, analysis, h)?;
    let component_witness = if met.len() == 1 { Some(met[0]) } else { None };
    let spanning = h.is_spanning() && h.n() == g.n();
    let (perfect_matching, matching) = has_perfect_fractional_matching(h);
    let framework = spanning && component_witness.is_some() && perfect_matching;

    let aperiodic_walk = if want.aperiodic && h.edge_count() > 0 {
        let own = TightAnalysis::new(h)?;
        (0..own.component_count).find_map(|c| own.coprime_walk(h, c))
    } else {
        None
    };
    let walk_ok = aperiodic_walk
        .as_ref()
        .is_some_and(|w| w.closed && num_integer::gcd(w.length, k) == 1 && verify_walk(h, w));
    let zero_free_clique = if want.zero_free { find_k_plus_1_clique(h) } else { None };
    let clique_ok = zero_free_clique.as_ref().is_some_and(|c| is_clique_of(h, c));

    Ok(FrameworkCertificate {
        k,
        spanning,
        component_witness,
        matching,
        perfect_matching,
        aperiodic_walk,
        zero_free_clique,
        linked_profile: linked_edge_profile(h),
        verdict: Verdict { framework, aperiodic: framework && walk_ok, zero_free: framework && clique_ok },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const APERIODIC: Want = Want { aperiodic: true, zero_free: false };

    #[test]
    fn odd_cycle() {
        let g = Graph::cycle(5);
        let c = certify_framework(&g, &build_clique_hypergraph(&g, 2), APERIODIC).unwrap();
        assert!(c.verdict.framework && c.verdict.aperiodic);
        assert_eq!(c.aperiodic_walk.unwrap().length % 2, 1);
    }

    #[test]
    fn even_cycle_is_periodic() {
        let g = Graph::cycle(4);
        let c = certify_framework(&g, &build_clique_hypergraph(&g, 2), APERIODIC).unwrap();
        assert!(c.verdict.framework);
        assert!(!c.verdict.aperiodic);
    }

    #[test]
    fn two_triangles_are_not_a_framework() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let c = certify_framework(&g, &build_clique_hypergraph(&g, 2), Want::default()).unwrap();
        assert!(c.spanning && c.perfect_matching);
        assert_eq!(c.component_witness, None);
        assert!(!c.verdict.framework);
    }

    #[test]
    fn zero_free_k4() {
        let g = Graph::complete(4);
        let want = Want { aperiodic: true, zero_free: true };
        let c = certify_framework(&g, &build_clique_hypergraph(&g, 3), want).unwrap();
        assert!(c.verdict.satisfies(want));
        assert_eq!(c.zero_free_clique, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn rejects_non_cliques() {
        let g = Graph::path(3);
        let h = KGraph::new(2, 3, vec![vec![0, 2]]).unwrap();
        assert!(certify_framework(&g, &h, Want::default()).is_err());
    }
}
