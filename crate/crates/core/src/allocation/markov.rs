use std::collections::BTreeMap;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::AllocationPlan;
use crate::error::{Error, Result};
use crate::rational::{q, qu, serde_q, Q};

pub const DEFAULT_RETRIES: usize = 20;

/// The chain on `{1..m} × {1..k−1}` that drives the cycle-walking
/// allocation. For `k = 2` it is the plain ±1 walk on `{1..m}`.
#[derive(Clone, Debug)]
pub struct MarkovChain {
    pub k: usize,
    pub m: usize,
}

impl MarkovChain {
    pub fn new(k: usize, m: usize) -> Result<MarkovChain> {
        if k < 2 || m == 0 {
            return Err(Error::invalid(format!("need k ≥ 2 and m ≥ 1, got k={k}, m={m}")));
        }
        Ok(MarkovChain { k, m })
    }

    fn width(&self) -> usize {
        self.k - 1
    }

    pub fn state_count(&self) -> usize {
        self.m * self.width()
    }

    /// Index of state `(a, b)`, both 1-based.
    pub fn index(&self, a: usize, b: usize) -> usize {
        (a - 1) * self.width() + (b - 1)
    }

    pub fn state(&self, idx: usize) -> (usize, usize) {
        (idx / self.width() + 1, idx % self.width() + 1)
    }

    fn wrap(&self, a: isize) -> usize {
        (a - 1).rem_euclid(self.m as isize) as usize + 1
    }

    pub fn transitions(&self, idx: usize) -> Vec<(usize, Q)> {
        let (a, b) = self.state(idx);
        let k = self.k;
        let mut out: BTreeMap<usize, Q> = BTreeMap::new();
        let mut push = |s: usize, p: Q| *out.entry(s).or_insert_with(|| qu(0)) += p;
        if k == 2 {
            push(self.index(self.wrap(a as isize + 1), 1), q(1, 2));
            push(self.index(self.wrap(a as isize - 1), 1), q(1, 2));
        } else if b == 1 {
            push(self.index(self.wrap(a as isize + 1), 1), q(1, 2));
            push(self.index(a, 2), q(1, 2));
        } else if b < k - 1 {
            push(self.index(a, b + 1), qu(1));
        } else {
            push(self.index(self.wrap(a as isize - 1), 1), qu(1));
        }
        out.into_iter().collect()
    }

    pub fn rows_stochastic(&self) -> bool {
        (0..self.state_count()).all(|s| self.transitions(s).into_iter().map(|(_, p)| p).sum::<Q>() == qu(1))
    }

    /// `2/(km)` on `b = 1`, `1/(km)` elsewhere.
    pub fn stationary(&self) -> Vec<Q> {
        let km = (self.k * self.m) as i64;
        (0..self.state_count()).map(|s| if self.state(s).1 == 1 { q(2, km) } else { q(1, km) }).collect()
    }

    pub fn step_distribution(&self, pi: &[Q]) -> Vec<Q> {
        let mut next = vec![qu(0); self.state_count()];
        for (s, p) in pi.iter().enumerate() {
            if *p == qu(0) {
                continue;
            }
            for (t, w) in self.transitions(s) {
                next[t] += p * w;
            }
        }
        next
    }

    /// `πP = π` exactly.
    pub fn is_stationary(&self, pi: &[Q]) -> bool {
        pi.len() == self.state_count() && self.step_distribution(pi) == pi
    }

    /// Class of `(a, b)` for the `k`-step chain: `a + b − 1 mod k`.
    pub fn class_of(&self, idx: usize) -> usize {
        let (a, b) = self.state(idx);
        (a + b - 1) % self.k
    }

    /// Checks, for `m = kt`, that `P^k` preserves every class `j` and that
    /// `2/(kt)`, `1/(kt)` restricted to class `j` is stationary for it.
    pub fn check_class_chains(&self) -> Result<bool> {
        let k = self.k;
        if self.m % k != 0 {
            return Err(Error::pre(format!("m = {} is not a multiple of k = {k}", self.m)));
        }
        let kt = self.m as i64;
        for j in 0..k {
            let pi: Vec<Q> = (0..self.state_count())
                .map(|s| {
                    if self.class_of(s) != j {
                        qu(0)
                    } else if self.state(s).1 == 1 {
                        q(2, kt)
                    } else {
                        q(1, kt)
                    }
                })
                .collect();
            if pi.iter().sum::<Q>() != qu(1) {
                return Ok(false);
            }
            let mut cur = pi.clone();
            for _ in 0..k {
                cur = self.step_distribution(&cur);
            }
            if cur != pi {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn sample_stationary(&self, rng: &mut ChaCha8Rng) -> usize {
        if self.k == 2 {
            return rng.gen_range(0..self.m);
        }
        let mut x = rng.gen_range(0..self.k * self.m);
        for s in 0..self.state_count() {
            let w = if self.state(s).1 == 1 { 2 } else { 1 };
            if x < w {
                return s;
            }
            x -= w;
        }
        unreachable!("weights sum to km")
    }

    fn sample_step(&self, s: usize, rng: &mut ChaCha8Rng) -> usize {
        let (a, b) = self.state(s);
        let coin = rng.gen::<bool>();
        if self.k == 2 {
            let a = if coin { a as isize + 1 } else { a as isize - 1 };
            return self.index(self.wrap(a), 1);
        }
        if b == 1 {
            if coin {
                self.index(self.wrap(a as isize + 1), 1)
            } else {
                self.index(a, 2)
            }
        } else if b < self.k - 1 {
            self.index(a, b + 1)
        } else {
            self.index(self.wrap(a as isize - 1), 1)
        }
    }

    /// Cluster `c_a` for `(a, 1)`, else `c_{a−k+b−1}`, 1-based mod `m`.
    pub fn cluster_of(&self, s: usize) -> usize {
        let (a, b) = self.state(s);
        if b == 1 {
            a
        } else {
            self.wrap(a as isize - self.k as isize + b as isize - 1)
        }
    }

    /// Cluster of `p_1, …, p_len` along one run of the chain.
    pub fn run(&self, len: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut out = Vec::with_capacity(len);
        if len == 0 {
            return out;
        }
        let mut s = self.sample_stationary(rng);
        out.push(self.cluster_of(s));
        for _ in 1..len {
            s = self.sample_step(s, rng);
            out.push(self.cluster_of(s));
        }
        out
    }
}

/// Whether positions at distance `1..k−1` go to clusters at cyclic distance
/// `1..k−1` in `{1..m}`, i.e. the map is a homomorphism `P_{k,q} → C_{k,m}`.
pub fn cycle_power_distance_ok(clusters: &[usize], k: usize, m: usize) -> bool {
    clusters.iter().enumerate().all(|(i, &x)| {
        (i + 1..clusters.len().min(i + k)).all(|j| {
            let d = x.abs_diff(clusters[j]);
            let d = d.min(m - d);
            d >= 1 && d < k
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkovAllocation {
    pub k: usize,
    pub r: usize,
    pub t: usize,
    /// Cluster (1-based, in `1..=rt`) of each path position `p_s`.
    pub clusters: Vec<usize>,
    pub loads: Vec<u64>,
    #[serde(with = "serde_q")]
    pub target: Q,
    pub attempts: usize,
    /// Largest relative deviation seen in each attempt.
    pub deviations: Vec<f64>,
}

impl MarkovAllocation {
    /// Allocation plan for a guest given its path positions (1-based).
    pub fn plan(&self, positions: &[usize]) -> AllocationPlan {
        let map = positions.iter().map(|&p| self.clusters[p - 1] - 1).collect();
        let m = self.r * self.t;
        AllocationPlan::new(map, m, vec![self.target.clone(); m])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("allocation serializes")
    }
}

/// Walks the chain along `p_1 … p_q`, where `weights[s−1]` guest vertices sit
/// at `p_s`, and returns the first run whose cluster loads are all within
/// `(1 ± ξ)` of the target, trying at most `retries + 1` runs.
pub fn markov_allocate(weights: &[u64], k: usize, r: usize, t: usize, xi: &Q, seed: u64, retries: usize) -> Result<MarkovAllocation> {
    if r != 1 && r != k {
        return Err(Error::invalid(format!("r must be 1 or k, got {r}")));
    }
    if t == 0 || t.gcd(&k) != 1 {
        return Err(Error::pre(format!("t = {t} and k = {k} are not coprime")));
    }
    let total: u64 = weights.iter().sum();
    if r == k {
        let per: Vec<u64> = (0..k).map(|j| weights.iter().skip(j).step_by(k).sum()).collect();
        if per.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::pre(format!("per-class counts {per:?} differ")));
        }
    }
    let m = r * t;
    if m < k {
        return Err(Error::pre(format!("rt = {m} is below k = {k}")));
    }
    let chain = MarkovChain::new(k, m)?;
    let target = Q::new(total.into(), (m as u64).into());
    let lo = &target * (qu(1) - xi);
    let hi = &target * (qu(1) + xi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deviations = Vec::new();
    for attempt in 1..=retries + 1 {
        let clusters = chain.run(weights.len(), &mut rng);
        if !cycle_power_distance_ok(&clusters, k, m) {
            return Err(Error::infeasible("chain produced a non-homomorphic window"));
        }
        let mut loads = vec![0u64; m];
        for (c, &w) in clusters.iter().zip(weights) {
            loads[c - 1] += w;
        }
        let tf = crate::rational::to_f64(&target);
        let dev = loads.iter().map(|&l| (l as f64 - tf).abs() / tf).fold(0.0, f64::max);
        deviations.push(dev);
        if loads.iter().all(|&l| qu(l as usize) >= lo && qu(l as usize) <= hi) {
            return Ok(MarkovAllocation { k, r, t, clusters, loads, target, attempts: attempt, deviations });
        }
    }
    Err(Error::infeasible(format!("loads missed (1±ξ)·{target} in every attempt; deviations {deviations:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stationary_exact() {
        for k in 2..=5 {
            for m in 1..=7 {
                let c = MarkovChain::new(k, m).unwrap();
                assert!(c.rows_stochastic());
                let pi = c.stationary();
                assert_eq!(pi.iter().sum::<Q>(), qu(1));
                assert!(c.is_stationary(&pi), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn class_chains() {
        for k in 2..=4 {
            for t in 1..=4 {
                let c = MarkovChain::new(k, k * t).unwrap();
                assert!(c.check_class_chains().unwrap(), "k={k} t={t}");
            }
        }
        assert!(MarkovChain::new(3, 4).unwrap().check_class_chains().is_err());
    }

    #[test]
    fn k2_is_plus_minus_one() {
        let c = MarkovChain::new(2, 5).unwrap();
        assert_eq!(c.state_count(), 5);
        let tr = c.transitions(c.index(1, 1));
        assert_eq!(tr, vec![(c.index(2, 1), q(1, 2)), (c.index(5, 1), q(1, 2))]);
        assert_eq!(c.stationary(), vec![q(1, 5); 5]);
    }

    #[test]
    fn runs_are_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (k, m) in [(2, 5), (3, 5), (3, 7), (4, 9), (3, 3), (4, 4)] {
            let c = MarkovChain::new(k, m).unwrap();
            let run = c.run(2000, &mut rng);
            assert!(cycle_power_distance_ok(&run, k, m), "k={k} m={m}");
        }
    }

    #[test]
    fn loads_concentrate() {
        let weights = vec![1u64; 20_000];
        let a = markov_allocate(&weights, 3, 1, 5, &q(1, 5), 0, 5).unwrap();
        assert_eq!(a.loads.iter().sum::<u64>(), 20_000);
        assert!(a.loads.iter().all(|&l| (3200..=4800).contains(&l)));
        assert_eq!(a.plan(&[1, 2, 3]).map.len(), 3);
    }

    #[test]
    fn preconditions() {
        assert!(markov_allocate(&[1; 10], 3, 1, 6, &q(1, 10), 0, 0).is_err());
        assert!(markov_allocate(&[1, 1, 2], 3, 3, 2, &q(1, 10), 0, 0).is_err());
        let err = markov_allocate(&[1; 50], 3, 1, 5, &q(1, 1000), 0, 2).unwrap_err();
        assert!(err.to_string().contains("deviations"));
    }
}
