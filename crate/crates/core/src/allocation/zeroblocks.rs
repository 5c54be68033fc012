use serde::Serialize;

use super::pathpower::PathPowerAllocation;
use crate::error::{Error, Result};
use crate::hypergraph::KGraph;
use crate::walks::{walk_between, WalkCertificate};

/// Guard on `tᵏ`.
pub const OMEGA_LIMIT: u128 = 1_000_000;

/// Intervals around zero block `i`; `F = [a + k, d − k]` on path positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroRun {
    pub i: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub f: (i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Piece {
    Main,
    Run(usize),
    Zero,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroBlockSplit {
    pub omega: i64,
    pub runs: Vec<ZeroRun>,
    /// Piece of every guest vertex.
    pub pieces: Vec<Piece>,
}

impl ZeroBlockSplit {
    pub fn members(&self, piece: Piece) -> Vec<usize> {
        (0..self.pieces.len()).filter(|&v| self.pieces[v] == piece).collect()
    }
}

/// Splits the guest into `H′`, the runs `F_j` and the zero vertices `H₀`,
/// with `ω = ktᵏ` and the run intervals around every zero block.
pub fn split_zero_blocks(alloc: &PathPowerAllocation, t: usize, k: usize, z: usize) -> Result<ZeroBlockSplit> {
    let tk = (t as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if tk > OMEGA_LIMIT {
        return Err(Error::guard(format!("t^k = {tk} exceeds {OMEGA_LIMIT}")));
    }
    let omega = k as i64 * tk as i64;
    let ki = k as i64;
    let need = 2 * omega - ki + 4;
    if (z as i64) <= need {
        return Err(Error::pre(format!("z = {z} must exceed 2ω − k + 4 = {need}")));
    }
    if let Some(w) = alloc.zero_indices.windows(2).find(|w| w[1] - w[0] < z) {
        return Err(Error::pre(format!("zero blocks {} and {} are closer than z = {z}", w[0], w[1])));
    }
    let runs: Vec<ZeroRun> = alloc
        .zero_indices
        .iter()
        .map(|&i| {
            let i = i as i64;
            let (a, d) = (i - 2 - omega + ki, i + 1 + omega);
            ZeroRun { i, a, b: i + ki - 3, c: i + 2, d, f: (a + ki, d - ki) }
        })
        .collect();
    let pieces = alloc
        .map
        .iter()
        .map(|p| match p {
            None => Piece::Zero,
            Some(p) => {
                let p = *p as i64;
                runs.iter().position(|r| r.f.0 <= p && p <= r.f.1).map_or(Piece::Main, Piece::Run)
            }
        })
        .collect();
    Ok(ZeroBlockSplit { omega, runs, pieces })
}

/// The two routing walks of a run: from `e1` into the clique ordering
/// `(c_1, …, c_k)`, and from `(c_2, …, c_{k+1})` out to `e4`. Both have
/// exactly `ktᵏ` vertices.
pub fn routing_walks(j: &KGraph, clique: &[usize], e1: &[usize], e4: &[usize]) -> Result<(WalkCertificate, WalkCertificate)> {
    let k = j.k();
    if clique.len() != k + 1 {
        return Err(Error::pre(format!("need a (k+1)-clique, got {} vertices", clique.len())));
    }
    let w1 = walk_between(j, e1, &clique[..k], clique)?;
    let rev_e4: Vec<usize> = e4.iter().rev().copied().collect();
    let rev_e3: Vec<usize> = clique[1..].iter().rev().copied().collect();
    let back = walk_between(j, &rev_e4, &rev_e3, clique)?;
    let mut seq = back.sequence;
    seq.reverse();
    let mut w2 = WalkCertificate::new(k, seq, false);
    w2.flags = back.flags;
    Ok((w1, w2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::allocate_to_path_power;
    use crate::graph::Graph;
    use crate::hypergraph::build_clique_hypergraph;
    use crate::rational::q;
    use crate::walks::verify_walk;

    #[test]
    fn no_zeros() {
        let h = Graph::path(12);
        let c: Vec<usize> = (0..12).map(|v| 1 + v % 3).collect();
        let a = allocate_to_path_power(&h, &c, &q(1, 4), 1, 3).unwrap();
        let s = split_zero_blocks(&a, 2, 3, 100).unwrap();
        assert!(s.runs.is_empty());
        assert_eq!(s.members(Piece::Main).len(), 12);
    }

    #[test]
    fn one_block_intervals() {
        let n = 1200;
        let h = Graph::path(n);
        let mut c: Vec<usize> = (0..n).map(|v| 1 + v % 3).collect();
        c[601] = 0;
        let a = allocate_to_path_power(&h, &c, &q(1, 400), 386, 3).unwrap();
        let s = split_zero_blocks(&a, 4, 3, 386).unwrap();
        assert_eq!(s.omega, 192);
        let r = &s.runs[0];
        assert_eq!(r.d - r.a + 1, 2 * 192 - 3 + 4);
        assert_eq!(r.b - r.a + 1, 192);
        assert_eq!(r.d - r.c + 1, 192);
        assert_eq!(s.members(Piece::Zero), vec![601]);
        assert!(!s.members(Piece::Run(0)).is_empty());
    }

    #[test]
    fn spacing_guard() {
        let h = Graph::path(12);
        let c: Vec<usize> = (0..12).map(|v| 1 + v % 3).collect();
        let a = allocate_to_path_power(&h, &c, &q(1, 4), 1, 3).unwrap();
        assert!(split_zero_blocks(&a, 4, 3, 385).is_err());
        assert!(split_zero_blocks(&a, 20, 5, 10_000_000).is_err());
    }

    #[test]
    fn routing() {
        let g = Graph::complete(6);
        let j = build_clique_hypergraph(&g, 2);
        let (w1, w2) = routing_walks(&j, &[0, 1, 2], &[3, 4], &[5, 3]).unwrap();
        assert!(verify_walk(&j, &w1) && verify_walk(&j, &w2));
        assert_eq!(w1.length, 2 * 36);
        assert_eq!(&w1.sequence[..2], &[3, 4]);
        assert_eq!(&w2.sequence[w2.length - 2..], &[5, 3]);
    }
}
