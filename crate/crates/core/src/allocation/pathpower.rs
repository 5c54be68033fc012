use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{ceil_i64, one, qu, Q};

/// Homomorphism of a bandwidth-ordered guest into `P⁺_{k,q}`, the
/// `(k−1)`th power of the path `p_1 … p_q` plus a universal vertex `*`.
/// Positions are 1-based; `None` stands for `*`.
#[derive(Clone, Debug, Serialize)]
pub struct PathPowerAllocation {
    pub k: usize,
    pub q: usize,
    pub block_size: usize,
    pub map: Vec<Option<usize>>,
    pub zero_indices: Vec<usize>,
    /// `loads[s−1] = |map⁻¹(p_s)|`.
    pub loads: Vec<usize>,
}

impl PathPowerAllocation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("allocation serializes")
    }

    /// Positions `{p_{i−1}, …, p_{i+k}}` around zero block `i`.
    pub fn zero_window(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        i.saturating_sub(1)..=i + self.k
    }

    /// Re-checks the four defining properties against `h` and `coloring`.
    pub fn verify(&self, h: &Graph, coloring: &[usize], z: usize) -> Result<()> {
        let k = self.k;
        let n = h.n();
        if self.map.len() != n || coloring.len() != n {
            return Err(Error::invalid("map and coloring must cover every vertex"));
        }
        for (u, v) in h.edges() {
            match (self.map[u], self.map[v]) {
                (Some(a), Some(b)) => {
                    let d = a.abs_diff(b);
                    if d == 0 || d >= k {
                        return Err(Error::infeasible(format!("edge {u}-{v} lands on p_{a}, p_{b}")));
                    }
                }
                (None, None) => return Err(Error::infeasible(format!("edge {u}-{v} joins two zero vertices"))),
                _ => {}
            }
        }
        for v in 0..n {
            match self.map[v] {
                None if coloring[v] != 0 => return Err(Error::infeasible(format!("vertex {v} sent to * but colored"))),
                Some(_) if coloring[v] == 0 => return Err(Error::infeasible(format!("zero vertex {v} not sent to *"))),
                Some(p) if p < 1 || p > self.q || p % k != coloring[v] % k => {
                    return Err(Error::infeasible(format!("vertex {v} of color {} sent to p_{p}", coloring[v])));
                }
                _ => {}
            }
        }
        let mut loads = vec![0usize; self.q];
        for p in self.map.iter().flatten() {
            loads[p - 1] += 1;
        }
        if loads != self.loads || loads.iter().any(|&l| l > k * self.block_size) {
            return Err(Error::infeasible("loads exceed k⌈βn⌉"));
        }
        if self.zero_indices.windows(2).any(|w| w[1] - w[0] < z) {
            return Err(Error::infeasible("zero blocks closer than z"));
        }
        for x in (0..n).filter(|&x| coloring[x] == 0) {
            for &y in h.neighbors(x) {
                let p = self.map[y].expect("neighbors of zeros are colored");
                if !self.zero_indices.iter().any(|&i| self.zero_window(i).contains(&p)) {
                    return Err(Error::infeasible(format!("neighbor {y} of zero vertex {x} sits at p_{p}")));
                }
            }
        }
        Ok(())
    }
}

/// Allocates `h` (vertex ids give the bandwidth ordering) along the path
/// power using the proper `(k+1)`-coloring `coloring` with colors `0..=k`.
pub fn allocate_to_path_power(h: &Graph, coloring: &[usize], beta: &Q, z: usize, k: usize) -> Result<PathPowerAllocation> {
    let n = h.n();
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    if *beta <= qu(0) || *beta > one() {
        return Err(Error::invalid("β must lie in (0, 1]"));
    }
    if n == 0 {
        return Err(Error::invalid("empty guest"));
    }
    let limit = beta * qu(n);
    if let Some((u, v)) = h.edges().find(|&(u, v)| qu(u.abs_diff(v)) > limit) {
        return Err(Error::pre(format!("ordering: edge {u}-{v} exceeds bandwidth βn = {limit}")));
    }
    if coloring.len() != n {
        return Err(Error::pre(format!("coloring: {} colors for {n} vertices", coloring.len())));
    }
    if let Some(v) = coloring.iter().position(|&c| c > k) {
        return Err(Error::pre(format!("coloring: vertex {v} has color {} > k", coloring[v])));
    }
    if let Some((u, v)) = h.edges().find(|&(u, v)| coloring[u] == coloring[v]) {
        return Err(Error::pre(format!("coloring: edge {u}-{v} is monochromatic")));
    }
    let block_size = ceil_i64(&limit) as usize;
    let q = ceil_i64(&(one() / beta)) as usize + k - 1;
    let block_of = |v: usize| v / block_size + 1;
    let mut zero_indices: Vec<usize> = (0..n).filter(|&v| coloring[v] == 0).map(block_of).collect();
    zero_indices.dedup();
    if let Some(w) = zero_indices.windows(2).find(|w| w[1] - w[0] < z) {
        return Err(Error::pre(format!("coloring: zero blocks {} and {} are closer than z = {z}", w[0], w[1])));
    }
    let map: Vec<Option<usize>> = (0..n)
        .map(|v| {
            let j = coloring[v];
            (j != 0).then(|| k * ((block_of(v) + k - 1 - j) / k) + j)
        })
        .collect();
    let mut loads = vec![0usize; q];
    for p in map.iter().flatten() {
        loads[p - 1] += 1;
    }
    let alloc = PathPowerAllocation { k, q, block_size, map, zero_indices, loads };
    alloc.verify(h, coloring, z)?;
    Ok(alloc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn path_two_coloring() {
        let n = 40;
        let h = Graph::path(n);
        let coloring: Vec<usize> = (0..n).map(|v| 1 + v % 2).collect();
        let a = allocate_to_path_power(&h, &coloring, &q(1, 10), 1, 2).unwrap();
        assert_eq!(a.q, 11);
        assert!(a.zero_indices.is_empty());
        for v in 0..n {
            let p = a.map[v].unwrap();
            assert_eq!(p % 2, coloring[v] % 2);
        }
    }

    #[test]
    fn empty_graph_loads() {
        let h = Graph::empty(30);
        let coloring = vec![1; 30];
        let a = allocate_to_path_power(&h, &coloring, &q(1, 5), 1, 3).unwrap();
        assert!(a.loads.iter().all(|&l| l <= 3 * a.block_size));
        assert_eq!(a.loads.iter().sum::<usize>(), 30);
    }

    #[test]
    fn one_zero_block() {
        let n = 30;
        let h = Graph::path(n);
        let mut coloring: Vec<usize> = (0..n).map(|v| 1 + v % 3).collect();
        coloring[16] = 0;
        let a = allocate_to_path_power(&h, &coloring, &q(1, 10), 4, 3).unwrap();
        assert_eq!(a.zero_indices, vec![6]);
        assert_eq!(a.map[16], None);
        for &y in h.neighbors(16) {
            assert!(a.zero_window(6).contains(&a.map[y].unwrap()));
        }
    }

    #[test]
    fn errors_are_distinguished() {
        let h = Graph::from_edges(10, &[(0, 9)]).unwrap();
        let err = allocate_to_path_power(&h, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 2], &q(1, 5), 1, 2).unwrap_err();
        assert!(err.to_string().contains("ordering"));
        let h = Graph::path(10);
        let err = allocate_to_path_power(&h, &[1; 10], &q(1, 5), 1, 2).unwrap_err();
        assert!(err.to_string().contains("coloring"));
        let mut c: Vec<usize> = (0..10).map(|v| 1 + v % 2).collect();
        c[0] = 0;
        c[5] = 0;
        let err = allocate_to_path_power(&h, &c, &q(1, 5), 3, 2).unwrap_err();
        assert!(err.to_string().contains("closer than z"));
    }
}
