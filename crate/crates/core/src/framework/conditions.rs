use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{codegree_map, KGraph};
use crate::rational::{qi, qu, serde_opt_q, Q};

/// Subset checks are exhaustive up to this many vertices and sampled above.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Outcome of one sufficient-condition check. `margin` is the worst slack
/// (`None` when the condition is vacuous); `holds` iff the margin is nonnegative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub holds: bool,
    #[serde(with = "serde_opt_q")]
    pub margin: Option<Q>,
    pub witness: Option<serde_json::Value>,
    /// Set when subsets were sampled rather than enumerated.
    pub probabilistic: bool,
}

impl ConditionReport {
    fn from_margin(condition: &str, margin: Option<Q>, witness: Option<serde_json::Value>, probabilistic: bool) -> ConditionReport {
        let holds = margin.as_ref().is_none_or(|m| *m >= Q::zero());
        ConditionReport { condition: condition.to_string(), holds, margin, witness, probabilistic }
    }

    fn combine(condition: &str, parts: &[ConditionReport]) -> ConditionReport {
        let worst = parts
            .iter()
            .filter(|r| r.margin.is_some())
            .min_by(|a, b| a.margin.cmp(&b.margin));
        ConditionReport {
            condition: condition.to_string(),
            holds: parts.iter().all(|r| r.holds),
            margin: worst.and_then(|r| r.margin.clone()),
            witness: parts.iter().find(|r| !r.holds).and_then(|r| r.witness.clone()),
            probabilistic: parts.iter().any(|r| r.probabilistic),
        }
    }
}

fn frac(num: usize, den: usize) -> Q {
    qu(num) / qu(den)
}

/// `deg(x) + deg(y) ≥ 2(k−1)n/k + μn` for all non-adjacent `x ≠ y`.
pub fn ore_check(g: &Graph, k: usize, mu: &Q) -> ConditionReport {
    let n = g.n();
    let need = frac(2 * (k - 1) * n, k) + mu * qu(n);
    let mut worst: Option<(Q, usize, usize)> = None;
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            let slack = qu(g.degree(x) + g.degree(y)) - &need;
            if worst.as_ref().is_none_or(|w| slack < w.0) {
                worst = Some((slack, x, y));
            }
        }
    }
    match worst {
        None => ConditionReport::from_margin("ore", None, None, false),
        Some((m, x, y)) => ConditionReport::from_margin("ore", Some(m), Some(json!({ "pair": [x, y] })), false),
    }
}

/// `d_i ≥ (k−2)n/k + i + offset` for every `i ≤ n/k`, on the sorted degree
/// sequence. The witness is the first failing index, or the tightest one.
pub fn posa_offset_check(g: &Graph, k: usize, offset: &Q) -> ConditionReport {
    let n = g.n();
    let d = g.degree_sequence().degrees;
    let base = frac((k - 2) * n, k) + offset;
    let mut worst: Option<(Q, usize)> = None;
    let mut first_fail = None;
    for i in 1..=n / k {
        let slack = qu(d[i - 1]) - &base - qu(i);
        if first_fail.is_none() && slack < Q::zero() {
            first_fail = Some(i);
        }
        if worst.as_ref().is_none_or(|w| slack < w.0) {
            worst = Some((slack, i));
        }
    }
    match worst {
        None => ConditionReport::from_margin("posa", None, None, false),
        Some((m, tight)) => {
            let i = first_fail.unwrap_or(tight);
            ConditionReport::from_margin("posa", Some(m), Some(json!({ "i": i, "d_i": d[i - 1] })), false)
        }
    }
}

pub fn posa_check(g: &Graph, k: usize, mu: &Q) -> ConditionReport {
    posa_offset_check(g, k, &(mu * qu(g.n())))
}

/// Adjacency rows as word bitsets.
struct Bits {
    adj: Vec<Vec<u64>>,
}

impl Bits {
    fn new(g: &Graph) -> Bits {
        let words = g.n().div_ceil(64).max(1);
        let adj = (0..g.n())
            .map(|v| {
                let mut row = vec![0u64; words];
                for &u in g.neighbors(v) {
                    row[u / 64] |= 1 << (u % 64);
                }
                row
            })
            .collect();
        Bits { adj }
    }

    fn into_set(&self, v: usize, set: &[u64]) -> usize {
        self.adj[v].iter().zip(set).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
}

fn contains(set: &[u64], v: usize) -> bool {
    set[v / 64] >> (v % 64) & 1 == 1
}

fn size_of(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn members(set: &[u64], n: usize) -> Vec<usize> {
    (0..n).filter(|&v| contains(set, v)).collect()
}

/// Calls `visit` on every nonempty vertex subset for small graphs, otherwise
/// on random subsets plus singletons, closed neighbourhoods, and their
/// complements. Returns whether sampling was used.
fn visit_subsets(g: &Graph, trials: usize, seed: u64, mut visit: impl FnMut(&[u64])) -> bool {
    let n = g.n();
    if n <= EXHAUSTIVE_LIMIT {
        for m in 1u64..(1u64 << n) {
            visit(&[m]);
        }
        return false;
    }
    let words = n.div_ceil(64);
    let pack = |bools: &[bool]| {
        let mut set = vec![0u64; words];
        for v in (0..n).filter(|&v| bools[v]) {
            set[v / 64] |= 1 << (v % 64);
        }
        set
    };
    for v in 0..n {
        let mut single = vec![false; n];
        single[v] = true;
        visit(&pack(&single));
        let mut nb = single;
        for &u in g.neighbors(v) {
            nb[u] = true;
        }
        visit(&pack(&nb));
        let rest: Vec<bool> = nb.iter().map(|b| !b).collect();
        if rest.iter().any(|&b| b) {
            visit(&pack(&rest));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let p: f64 = rng.gen_range(0.05..0.95);
        let bools: Vec<bool> = (0..n).map(|_| rng.gen_bool(p)).collect();
        if bools.iter().any(|&b| b) {
            visit(&pack(&bools));
        }
    }
    true
}

fn keep_worst(worst: &mut Option<(Q, Vec<u64>)>, slack: Q, set: &[u64]) {
    if worst.as_ref().is_none_or(|w| slack < w.0) {
        *worst = Some((slack, set.to_vec()));
    }
}

/// `e(U) ≥ d|U|²/2 − ρn²` for every `U`.
pub fn dense_check(g: &Graph, rho: &Q, d: &Q, trials: usize, seed: u64) -> ConditionReport {
    let n = g.n();
    let bits = Bits::new(g);
    let floor = rho * qu(n * n);
    let mut worst = None;
    let sampled = visit_subsets(g, trials, seed, |set| {
        let size = size_of(set);
        let inside: usize = (0..n).filter(|&v| contains(set, v)).map(|v| bits.into_set(v, set)).sum::<usize>() / 2;
        keep_worst(&mut worst, qu(inside) - d * qu(size * size) / qi(2) + &floor, set);
    });
    match worst {
        None => ConditionReport::from_margin("dense", None, None, sampled),
        Some((m, s)) => ConditionReport::from_margin("dense", Some(m), Some(json!({ "U": members(&s, n) })), sampled),
    }
}

/// `e(X, V∖X) ≥ μ|X||V∖X|` for every proper nonempty `X`.
pub fn inseparable_check(g: &Graph, mu: &Q, trials: usize, seed: u64) -> ConditionReport {
    let n = g.n();
    let bits = Bits::new(g);
    let mut worst = None;
    let sampled = visit_subsets(g, trials, seed, |set| {
        let x = size_of(set);
        // Enumerated cuts appear twice; keep the side without the last vertex.
        if x == n || (n <= EXHAUSTIVE_LIMIT && contains(set, n - 1)) {
            return;
        }
        let cut: usize = (0..n).filter(|&v| contains(set, v)).map(|v| g.degree(v) - bits.into_set(v, set)).sum();
        keep_worst(&mut worst, qu(cut) - mu * qu(x * (n - x)), set);
    });
    match worst {
        None => ConditionReport::from_margin("inseparable", None, None, sampled),
        Some((m, s)) => ConditionReport::from_margin("inseparable", Some(m), Some(json!({ "X": members(&s, n) })), sampled),
    }
}

pub fn dense_inseparable_check(g: &Graph, rho: &Q, d: &Q, mu: &Q, trials: usize, seed: u64) -> ConditionReport {
    let parts = [dense_check(g, rho, d, trials, seed), inseparable_check(g, mu, trials, seed)];
    ConditionReport::combine("dense-inseparable", &parts)
}

/// `A_η(H)`: edges of `h` containing a `(k−1)`-set of degree at least `ηn`.
pub fn adherence(h: &KGraph, eta: &Q) -> KGraph {
    let need = eta * qu(h.n());
    let map = codegree_map(h);
    h.filter(|e| {
        (0..e.len()).any(|skip| {
            let key: Vec<usize> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            map.get(&key).is_some_and(|list| qu(list.len()) >= need)
        })
    })
}

/// The deficiency thresholds `g(n,t,k)` and `f(n,t,k)`. Binomials of
/// non-integral arguments are evaluated as `x(x−1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyBounds {
    #[serde(with = "crate::rational::serde_q")]
    pub g: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub f: Q,
}

fn choose2(x: &Q) -> Q {
    x * (x - qi(1)) / qi(2)
}

pub fn deficiency_bounds(n: usize, t: usize, k: usize) -> Result<DeficiencyBounds> {
    if k < 2 {
        return Err(Error::invalid("deficiency bounds need k ≥ 2"));
    }
    let nq = qu(n);
    let all = choose2(&nq);
    let r = (t + 1).div_ceil(k - 1);
    let q = t % (k - 1);
    let first = &all - choose2(&(frac(n + t, k) + qi(1)));
    let second = &all - choose2(&qu(r)) - qu(r) * (qi(n as i64 - r as i64) - (qi(k as i64 - 2 - q as i64)));
    let g = first.max(second);
    let tt = qu(t);
    let f = if tt >= qu((k - 1) * n) {
        Q::zero()
    } else if tt < frac((k - 1) * n, 2 * k * k - 2 * k + 1) {
        let s = frac(t, k - 1);
        &all - choose2(&s) - &s * (&nq - &s)
    } else {
        &all - choose2(&frac(n + t, k))
    };
    Ok(DeficiencyBounds { g, f })
}

/// `δ_r`: least minimum degree over the bipartite graphs between two parts.
pub fn multipartite_degree(g: &Graph) -> Result<usize> {
    let parts = g.partition().ok_or_else(|| Error::invalid("graph has no partition"))?;
    if parts.len() < 2 {
        return Err(Error::invalid("δ_r needs at least two parts"));
    }
    let mut best = usize::MAX;
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut mask = vec![false; g.n()];
            for &v in b {
                mask[v] = true;
            }
            for &v in a {
                best = best.min(g.degree_into(v, &mask));
            }
        }
    }
    Ok(best)
}

/// `δ_r(G) ≥ ((k−1)/k + μ)n` with `n` the part size.
pub fn multipartite_check(g: &Graph, k: usize, mu: &Q) -> Result<ConditionReport> {
    let delta = multipartite_degree(g)?;
    let n = g.partition().map(|p| p[0].len()).unwrap_or(0);
    let margin = qu(delta) - (frac(k - 1, k) + mu) * qu(n);
    Ok(ConditionReport::from_margin("multipartite", Some(margin), Some(json!({ "delta_r": delta })), false))
}

/// `δ(G) ≥ ηn`, and `|RN_ν(S)| ≥ |S| + νn` for all `τn ≤ |S| ≤ (1−τ)n`.
pub fn robust_expander_check(g: &Graph, nu: &Q, tau: &Q, eta: &Q, trials: usize, seed: u64) -> ConditionReport {
    let n = g.n();
    let nn = qu(n);
    let min_deg = ConditionReport::from_margin(
        "min-degree",
        Some(qu(g.min_degree()) - eta * &nn),
        Some(json!({ "delta": g.min_degree() })),
        false,
    );
    let bits = Bits::new(g);
    let lo = tau * &nn;
    let hi = (qi(1) - tau) * &nn;
    let robust = nu * &nn;
    let mut worst = None;
    let sampled = visit_subsets(g, trials, seed, |set| {
        let size = qu(size_of(set));
        if size < lo || size > hi {
            return;
        }
        let rn = (0..n).filter(|&v| qu(bits.into_set(v, set)) >= robust).count();
        keep_worst(&mut worst, qu(rn) - size - &robust, set);
    });
    let expansion = match worst {
        None => ConditionReport::from_margin("expansion", None, None, sampled),
        Some((m, s)) => ConditionReport::from_margin("expansion", Some(m), Some(json!({ "S": members(&s, n) })), sampled),
    };
    ConditionReport::combine("robust-expander", &[min_deg, expansion])
}
