use std::collections::BTreeMap;

use num_traits::Signed;

use super::fractional::has_perfect_fractional_matching;
use super::sparsify::eliminate;
use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::rational::Q;

/// Intersects every edge with `keep`, merging edges with equal traces.
/// Returns the traces, summed weights, and the first preimage of each trace.
pub(crate) fn restrict(sets: &[Vec<usize>], weights: &[Q], keep: &[bool]) -> (Vec<Vec<usize>>, Vec<Q>, Vec<usize>) {
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut traces = Vec::new();
    let mut sums: Vec<Q> = Vec::new();
    let mut pre = Vec::new();
    for (j, set) in sets.iter().enumerate() {
        let trace: Vec<usize> = set.iter().copied().filter(|&v| keep[v]).collect();
        match index.get(&trace) {
            Some(&i) => sums[i] += &weights[j],
            None => {
                index.insert(trace.clone(), traces.len());
                traces.push(trace);
                sums.push(weights[j].clone());
                pre.push(j);
            }
        }
    }
    (traces, sums, pre)
}

/// Returns indices into `sets` forming a cover of `alive` with degrees at most `cap`.
fn recurse(n: usize, alive: &[bool], sets: &[Vec<usize>], mut weights: Vec<Q>, cap: usize) -> Vec<usize> {
    eliminate(n, sets, &mut weights);
    let support: Vec<usize> = (0..sets.len()).filter(|&j| weights[j].is_positive() && !sets[j].is_empty()).collect();
    let size = alive.iter().filter(|&&a| a).count();
    if size <= cap {
        return support;
    }
    let mut deg = vec![0usize; n];
    for &j in &support {
        for &v in &sets[j] {
            deg[v] += 1;
        }
    }
    let star = *support
        .iter()
        .find(|&&j| sets[j].iter().all(|&v| deg[v] < cap))
        .expect("some support edge avoids the high-degree vertices");
    let mut keep = alive.to_vec();
    for &v in &sets[star] {
        keep[v] = false;
    }
    let sup_sets: Vec<Vec<usize>> = support.iter().map(|&j| sets[j].clone()).collect();
    let sup_weights: Vec<Q> = support.iter().map(|&j| weights[j].clone()).collect();
    let (traces, sums, pre) = restrict(&sup_sets, &sup_weights, &keep);
    let mut chosen: Vec<usize> = recurse(n, &keep, &traces, sums, cap)
        .into_iter()
        .filter(|&i| !traces[i].is_empty())
        .map(|i| support[pre[i]])
        .collect();
    chosen.push(star);
    chosen.sort_unstable();
    chosen.dedup();
    chosen
}

/// Spanning subgraph of `h` in which every vertex has degree between 1 and `k²+1`.
pub fn bounded_degree_cover(h: &KGraph) -> Result<KGraph> {
    let (perfect, m) = has_perfect_fractional_matching(h);
    if !perfect {
        return Err(Error::pre("no perfect fractional matching"));
    }
    let k = h.k();
    let cap = k * k + 1;
    let weights: Vec<Q> = h.edges().iter().map(|e| m.weight(e)).collect();
    let mut ids = recurse(h.n(), &vec![true; h.n()], h.edges(), weights, cap);
    ids.retain(|&j| !h.edges()[j].is_empty());
    let cover = h.sub(&ids);
    let deg = cover.degrees();
    debug_assert!(deg.iter().all(|&d| d >= 1 && d <= cap));
    if deg.iter().any(|&d| d == 0 || d > cap) {
        return Err(Error::infeasible("cover recursion produced an out-of-range degree"));
    }
    Ok(cover)
}
