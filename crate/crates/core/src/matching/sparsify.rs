use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::fractional::FractionalMatching;
use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::rational::{one, Q};

/// Finds a kernel vector among the positive-weight columns, if any.
fn dependency(rows: usize, sets: &[Vec<usize>], weights: &[Q]) -> Option<BTreeMap<usize, Q>> {
    let mut basis: Vec<(usize, Vec<Q>, BTreeMap<usize, Q>)> = Vec::new();
    for (j, set) in sets.iter().enumerate() {
        if !weights[j].is_positive() {
            continue;
        }
        let mut v = vec![Q::zero(); rows];
        for &r in set {
            v[r] = one();
        }
        let mut combo = BTreeMap::from([(j, one())]);
        for (pivot, bv, bc) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &bv[*pivot];
            for (x, y) in v.iter_mut().zip(bv) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (i, c) in bc {
                let e = combo.entry(*i).or_insert_with(Q::zero);
                *e -= &f * c;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => basis.push((pivot, v, combo)),
            None => {
                combo.retain(|_, c| !c.is_zero());
                return Some(combo);
            }
        }
    }
    None
}

/// Moves along kernel directions until the support columns are independent.
/// Row sums `Σ w_j [r ∈ sets_j]` are preserved exactly.
pub(crate) fn eliminate(rows: usize, sets: &[Vec<usize>], weights: &mut [Q]) {
    while let Some(z) = dependency(rows, sets, weights) {
        let (arg, lambda) = z
            .iter()
            .filter(|(_, c)| c.is_positive())
            .map(|(&i, c)| (i, &weights[i] / c))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("kernel vector has a positive entry");
        for (i, c) in &z {
            weights[*i] -= &lambda * c;
        }
        weights[arg] = Q::zero();
    }
}

/// Reduces the support of a perfect fractional matching to at most `v(H)` edges.
pub fn sparsify_matching(h: &KGraph, m: &FractionalMatching) -> Result<FractionalMatching> {
    m.verify(h)?;
    if !m.is_perfect(h) {
        return Err(Error::pre("matching is not perfect"));
    }
    let sets: Vec<Vec<usize>> = m.weights.keys().cloned().collect();
    let mut weights: Vec<Q> = m.weights.values().cloned().collect();
    eliminate(h.n(), &sets, &mut weights);
    Ok(FractionalMatching::new(sets.into_iter().zip(weights)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hypergraph::build_clique_hypergraph;
    use crate::matching::max_fractional_matching;
    use crate::rational::q;

    fn uniform(h: &KGraph, w: Q) -> FractionalMatching {
        FractionalMatching::new(h.edges().iter().map(|e| (e.clone(), w.clone())))
    }

    #[test]
    fn odd_cycle_keeps_everything() {
        let h = build_clique_hypergraph(&Graph::cycle(5), 2);
        let m = uniform(&h, q(1, 2));
        let s = sparsify_matching(&h, &m).unwrap();
        assert_eq!(s, m);
    }

    #[test]
    fn k4_reduces() {
        let h = build_clique_hypergraph(&Graph::complete(4), 2);
        let m = uniform(&h, q(1, 3));
        let s = sparsify_matching(&h, &m).unwrap();
        assert!(s.support() <= 4);
        assert!(s.loads(4).iter().all(|l| *l == one()));
        s.verify(&h).unwrap();
    }

    #[test]
    fn rejects_imperfect() {
        let h = build_clique_hypergraph(&Graph::path(3), 2);
        let m = max_fractional_matching(&h);
        assert!(sparsify_matching(&h, &m).is_err());
    }

    #[test]
    fn zero_columns_are_dropped() {
        let sets = vec![vec![], vec![0], vec![0]];
        let mut w = vec![q(1, 2), q(1, 2), q(1, 2)];
        eliminate(1, &sets, &mut w);
        assert!(w[0].is_zero());
        assert_eq!(&w[1] + &w[2], one());
        assert_eq!(w.iter().filter(|x| x.is_positive()).count(), 1);
    }
}
