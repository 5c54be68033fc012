//! Extremal constructions and seeded random instances. Every generator runs
//! the verifiers for the properties its construction is known to have and
//! attaches the results.

use num_integer::{Integer, Roots};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::framework::{ore_check, posa_offset_check};
use crate::graph::{blow_up, Graph};
use crate::hypergraph::{build_clique_hypergraph, KGraph};
use crate::oracle::find_power_ham_cycle;
use crate::rational::{qu, Q};
use crate::walks::TightAnalysis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Bkt,
    PosaExtremalK,
    OrePosaSeparator,
    FragileFramework,
    Blowup,
    MultipartiteRandom,
    RandomDense,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = serde_json::to_value(self).expect("family serializes");
        f.write_str(name.as_str().unwrap_or("family"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Check {
        Check { name: name.to_string(), holds, detail: detail.into() }
    }
}

/// A generated graph with its parameters and verifier results.
#[derive(Clone, Debug)]
pub struct Construction {
    pub family: Family,
    pub graph: Graph,
    pub hypergraph: Option<KGraph>,
    pub meta: Value,
    pub checks: Vec<Check>,
}

impl Construction {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let meta = json!({
            "family": self.family,
            "parameters": self.meta,
            "checks": self.checks,
            "verified": self.verified(),
        });
        self.graph.to_json_with_meta(Some(meta))
    }
}

fn ceil_sqrt(n: usize) -> usize {
    let s = n.sqrt();
    if s * s == n {
        s
    } else {
        s + 1
    }
}

/// Sizes used by the three-class construction on `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BktLayout {
    pub c: usize,
    pub stars: usize,
    pub v2: usize,
    pub v3: usize,
}

pub fn bkt_layout(n: usize) -> Result<BktLayout> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::invalid(format!("n = {n} must be a positive multiple of 3")));
    }
    let c = n.sqrt() / 12;
    let stars = ceil_sqrt(n);
    let v2 = n / 3 + c + 1;
    if 2 * n / 3 < c + 2 {
        return Err(Error::pre(format!("n = {n} is too small")));
    }
    let v3 = 2 * n / 3 - c - 2;
    if v2 < stars {
        return Err(Error::pre(format!("n = {n} is too small: {v2} vertices for {stars} stars")));
    }
    Ok(BktLayout { c, stars, v2, v3 })
}

/// Vertex `0` is `v`, then `V₂`, then `V₃`; the stars cover `V₂`
/// round-robin and are centred at their first vertex.
fn bkt_graph(n: usize, l: &BktLayout) -> Graph {
    let v2: Vec<usize> = (1..=l.v2).collect();
    let v3: Vec<usize> = (l.v2 + 1..n).collect();
    let mut edges = Vec::new();
    for &x in &v2 {
        edges.push((0, x));
        for &y in &v3 {
            edges.push((x, y));
        }
    }
    for (i, &x) in v3.iter().enumerate() {
        for &y in &v3[i + 1..] {
            edges.push((x, y));
        }
    }
    for s in 0..l.stars {
        let members: Vec<usize> = v2.iter().copied().skip(s).step_by(l.stars).collect();
        for &leaf in &members[1..] {
            edges.push((members[0], leaf));
        }
    }
    Graph::from_edges(n, &edges).expect("construction edges are valid")
}

/// `d_i ≥ n/3 + c + i` for every `i ≤ n/3`.
pub fn verify_bkt_degrees(g: &Graph, c: usize) -> Check {
    let n = g.n();
    let d = g.degree_sequence().degrees;
    let fail = (1..=n / 3).find(|&i| d[i - 1] < n / 3 + c + i);
    match fail {
        None => Check::new("bkt-degrees", true, format!("d_i ≥ n/3 + {c} + i for all i ≤ {}", n / 3)),
        Some(i) => Check::new("bkt-degrees", false, format!("d_{i} = {} < {}", d[i - 1], n / 3 + c + i)),
    }
}

/// `g[set]` contains no path with three edges.
pub fn verify_no_long_path(g: &Graph, set: &[usize]) -> Check {
    let sub = g.induced(set);
    for (b, c) in sub.edges() {
        for &a in sub.neighbors(b) {
            if a == c {
                continue;
            }
            if sub.neighbors(c).iter().any(|&d| d != b && d != a) {
                let (a, b, c) = (set[a], set[b], set[c]);
                return Check::new("no-path-of-length-3", false, format!("path through {a}, {b}, {c}"));
            }
        }
    }
    Check::new("no-path-of-length-3", true, format!("neighbourhood of {} vertices", set.len()))
}

pub fn gen_bkt(n: usize) -> Result<Construction> {
    let l = bkt_layout(n)?;
    let g = bkt_graph(n, &l);
    let checks = vec![verify_bkt_degrees(&g, l.c), verify_no_long_path(&g, g.neighbors(0))];
    Ok(Construction { family: Family::Bkt, graph: g, hypergraph: None, meta: json!({ "n": n, "layout": l }), checks })
}

/// `d_i ≥ (k−2)N/k + √N/(12k) + i` for `i ≤ N/k`, compared exactly.
pub fn verify_extremal_degrees(g: &Graph, k: usize) -> Check {
    let big_n = g.n();
    let d = g.degree_sequence().degrees;
    let base = (k - 2) * big_n / k;
    for i in 1..=big_n / k {
        let ok = d[i - 1] >= base + i && {
            let s = 12 * k * (d[i - 1] - base - i);
            s * s >= big_n
        };
        if !ok {
            return Check::new("extremal-degrees", false, format!("d_{i} = {} too small", d[i - 1]));
        }
    }
    Check::new("extremal-degrees", true, format!("all i ≤ {}", big_n / k))
}

/// Complete `(k−2)`-partite graph with `k−3` parts of size `n` and a part of
/// size `3n` holding a copy of the three-class construction.
pub fn gen_posa_extremal_k(k: usize, n: usize) -> Result<Construction> {
    if k < 4 {
        return Err(Error::invalid("k must be at least 4; use gen_bkt for k = 3"));
    }
    let inner = gen_bkt(3 * n)?;
    let big_n = k * n;
    let mut edges: Vec<(usize, usize)> = inner.graph.edges().collect();
    let part = |v: usize| if v < 3 * n { 0 } else { 1 + (v - 3 * n) / n };
    for u in 0..big_n {
        for v in u + 1..big_n {
            if part(u) != part(v) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(big_n, &edges)?;
    let outside = (3 * n..big_n).map(|v| g.degree(v)).collect::<Vec<_>>();
    let exact = outside.iter().all(|&d| d == (k - 1) * n);
    let checks = vec![
        verify_extremal_degrees(&g, k),
        Check::new("outside-degree", exact, format!("vertices outside U have degree {}", (k - 1) * n)),
    ];
    Ok(Construction { family: Family::PosaExtremalK, graph: g, hypergraph: None, meta: json!({ "k": k, "n": n, "N": big_n }), checks })
}

/// Cardinalities of the Ore/Pósa separator at `n`, if all are integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatorSizes {
    pub n: usize,
    pub x0: usize,
    pub x1: usize,
    pub x2: usize,
    pub d0: usize,
    pub d1: usize,
}

pub fn separator_sizes(k: usize, n: usize, mu: &Q) -> std::result::Result<SeparatorSizes, String> {
    let beta_n = qu(5) * mu * qu(n);
    if !beta_n.is_integer() {
        return Err(format!("βn = {beta_n} is not an integer"));
    }
    if n % (2 * k) != 0 {
        return Err(format!("|X₀| = n/2k = {n}/{} is not an integer", 2 * k));
    }
    let d0 = beta_n.to_integer().try_into().map_err(|_| "βn out of range".to_string())?;
    let x0 = n / (2 * k);
    if (3 * n) % (2 * k) != 0 {
        return Err("3n/2k is not an integer".into());
    }
    let x1 = 3 * n / (2 * k) + d0;
    if x0 + x1 > n || d0 > x1 {
        return Err(format!("classes do not fit in n = {n}"));
    }
    if (d0 * x0) % x1 != 0 {
        return Err(format!("d₁ = βn·|X₀|/|X₁| = {}/{x1} is not an integer", d0 * x0));
    }
    Ok(SeparatorSizes { n, x0, x1, x2: n - x0 - x1, d0, d1: d0 * x0 / x1 })
}

/// Nearest `n' ≥ 2k` with integral cardinalities; ties go to the smaller.
pub fn snap_separator_n(k: usize, n: usize, mu: &Q) -> Option<SeparatorSizes> {
    let limit = 100 * n.max(100);
    (0..limit).find_map(|d| {
        let below = n.checked_sub(d).filter(|&m| m >= 2 * k).and_then(|m| separator_sizes(k, m, mu).ok());
        below.or_else(|| separator_sizes(k, n + d, mu).ok())
    })
}

/// Ore holds at `μ` while Pósa fails at `i = |X₀|`.
pub fn gen_ore_posa_separator(k: usize, n: usize, mu: &Q, snap: bool) -> Result<Construction> {
    if k < 3 {
        return Err(Error::invalid("k must be at least 3"));
    }
    if *mu <= qu(0) {
        return Err(Error::invalid("μ must be positive"));
    }
    let s = match separator_sizes(k, n, mu) {
        Ok(s) => s,
        Err(why) if snap => snap_separator_n(k, n, mu).ok_or_else(|| Error::invalid(format!("no integral n near {n}: {why}")))?,
        Err(why) => return Err(Error::invalid(format!("non-integral parameters at n = {n}: {why}"))),
    };
    let x0: Vec<usize> = (0..s.x0).collect();
    let x1: Vec<usize> = (s.x0..s.x0 + s.x1).collect();
    let x2: Vec<usize> = (s.x0 + s.x1..s.n).collect();
    let mut edges = Vec::new();
    for class in [&x0, &x1, &x2] {
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    for &u in &x2 {
        for &v in x0.iter().chain(&x1) {
            edges.push((u, v));
        }
    }
    for (i, &u) in x0.iter().enumerate() {
        for off in 0..s.d0 {
            edges.push((u, x1[(i * s.d0 + off) % s.x1]));
        }
    }
    let g = Graph::from_edges(s.n, &edges)?;
    let biregular = x0.iter().all(|&u| g.degree(u) == s.x0 - 1 + s.x2 + s.d0) && x1.iter().all(|&u| g.degree(u) == s.x1 - 1 + s.x2 + s.d1);
    let ore = ore_check(&g, k, mu);
    let ore_zero = ore_check(&g, k, &qu(0));
    let posa = posa_offset_check(&g, k, &qu(0));
    let fail_at = posa.witness.as_ref().and_then(|w| w["i"].as_u64()).map(|i| i as usize);
    let floor = Q::new((s.d0 as i64).into(), 4.into()) - qu(2);
    let checks = vec![
        Check::new("biregular", biregular, format!("d₀ = {}, d₁ = {}", s.d0, s.d1)),
        Check::new("ore", ore.holds, format!("margin {:?}", ore.margin.as_ref().map(|m| m.to_string()))),
        Check::new(
            "ore-margin",
            ore_zero.margin.as_ref().is_some_and(|m| *m >= floor),
            format!("degree-sum margin {:?} against βn/4 − 2 = {floor}", ore_zero.margin.as_ref().map(|m| m.to_string())),
        ),
        Check::new("posa-fails-at-x0", !posa.holds && fail_at == Some(s.x0), format!("first failure at i = {fail_at:?}, |X₀| = {}", s.x0)),
    ];
    let meta = json!({ "k": k, "requested_n": n, "snapped": s.n != n, "sizes": s, "mu": mu.to_string() });
    Ok(Construction { family: Family::OrePosaSeparator, graph: g, hypergraph: None, meta, checks })
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Oracle budget used when the fragile construction is small enough.
pub const FRAGILE_ORACLE_LIMIT: usize = 20;

/// Base graph: vertex `0` is the apex `v₀`, vertex `i` is `v_i` for
/// `1 ≤ i ≤ 2n`, `n = 4q`. Every `v_i` is blown up to `m` vertices.
pub fn gen_fragile_framework(q: usize, m: usize) -> Result<Construction> {
    if !is_prime(q) {
        return Err(Error::invalid(format!("q = {q} is not prime")));
    }
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let n = 4 * q;
    let two_n = 2 * n;
    if 5usize.gcd(&two_n) != 1 {
        return Err(Error::invalid(format!("5 is not coprime to 2n = {two_n}, so the cycle order is not a permutation")));
    }
    let sigma = |i: usize| match (5 * i) % two_n {
        0 => two_n,
        r => r,
    };
    let mut edges = Vec::new();
    for block in [1..=n, n + 1..=two_n] {
        let vs: Vec<usize> = block.collect();
        for (a, &u) in vs.iter().enumerate() {
            for &v in vs.iter().skip(a + 1).take(3) {
                edges.push((u, v));
            }
        }
    }
    for i in 1..=two_n {
        for d in 1..=3 {
            let j = (i - 1 + d) % two_n + 1;
            edges.push((sigma(i), sigma(j)));
        }
    }
    for v in [1, 2, n + 1, n + 2] {
        edges.push((0, v));
    }
    let base = Graph::from_edges(two_n + 1, &edges)?;
    let mut sizes = vec![m; two_n + 1];
    sizes[0] = 1;
    let g = blow_up(&base, &sizes)?.without_partition();
    let h = build_clique_hypergraph(&g, 3);
    let comps = TightAnalysis::new(&h)?.component_count;
    let mut checks = vec![
        Check::new("sigma-bijective", 5usize.gcd(&two_n) == 1, format!("gcd(5, {two_n}) = {}", 5usize.gcd(&two_n))),
        Check::new("two-tight-components", comps == 2, format!("K_3 has {comps} tight components")),
    ];
    if g.n() <= FRAGILE_ORACLE_LIMIT {
        let v = find_power_ham_cycle(&g, 3, 50_000_000);
        checks.push(Check::new(
            "no-square-hamilton-cycle",
            !v.found && !v.timed_out,
            format!("oracle explored {} nodes, found = {}, timed out = {}", v.nodes_explored, v.found, v.timed_out),
        ));
    }
    let meta = json!({ "q": q, "m": m, "n": n, "base_vertices": two_n + 1 });
    Ok(Construction { family: Family::FragileFramework, graph: g, hypergraph: Some(h), meta, checks })
}

pub fn gen_blowup(base: &Graph, sizes: &[usize]) -> Result<Construction> {
    let g = blow_up(base, sizes)?;
    let total: usize = sizes.iter().sum();
    let checks = vec![Check::new("order", g.n() == total, format!("{} vertices", g.n()))];
    Ok(Construction { family: Family::Blowup, graph: g, hypergraph: None, meta: json!({ "sizes": sizes }), checks })
}

/// `G(n, p)` from a seeded ChaCha stream.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Construction> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, &edges)?;
    let checks = vec![Check::new("order", g.n() == n, format!("{} edges", g.edge_count()))];
    Ok(Construction { family: Family::RandomDense, graph: g, hypergraph: None, meta: json!({ "n": n, "p": p, "seed": seed }), checks })
}

/// Balanced `r`-partite `G(n, p)` with parts of size `size`, carrying the
/// partition annotation.
pub fn gen_multipartite_random(r: usize, size: usize, p: f64, seed: u64) -> Result<Construction> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} outside [0, 1]")));
    }
    if r < 2 || size == 0 {
        return Err(Error::invalid("need at least two non-empty parts"));
    }
    let n = r * size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / size != v / size && rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let parts = (0..r).map(|i| (i * size..(i + 1) * size).collect()).collect();
    let g = Graph::from_edges(n, &edges)?.with_partition(parts)?;
    let checks = vec![Check::new("partite", g.partition().is_some(), format!("{r} parts of {size}"))];
    Ok(Construction { family: Family::MultipartiteRandom, graph: g, hypergraph: None, meta: json!({ "r": r, "size": size, "p": p, "seed": seed }), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn bkt_300() {
        let c = gen_bkt(300).unwrap();
        let l = bkt_layout(300).unwrap();
        assert_eq!((l.c, l.stars, l.v2, l.v3), (1, 18, 102, 197));
        assert_eq!(c.graph.degree(0), 102);
        assert!(c.verified(), "{:?}", c.checks);
        assert!(gen_bkt(301).is_err());
    }

    #[test]
    fn star_sizes() {
        let c = gen_bkt(300).unwrap();
        let g = &c.graph;
        let inside = g.induced(&(1..=102).collect::<Vec<_>>());
        let comps = inside.components();
        assert_eq!(comps.len(), 18);
        assert!(comps.iter().all(|s| s.len() == 5 || s.len() == 6));
    }

    #[test]
    fn extremal_k4() {
        let c = gen_posa_extremal_k(4, 75).unwrap();
        assert_eq!(c.graph.n(), 300);
        assert!(c.check("outside-degree").unwrap().holds);
        // The outside vertices sit at degree (k−1)n, which is c_{3n} short of
        // the bound at the last index i = N/k.
        let d = c.check("extremal-degrees").unwrap();
        assert!(!d.holds);
        assert!(d.detail.starts_with("d_75 = 225"), "{}", d.detail);
        assert!(gen_posa_extremal_k(3, 75).is_err());
    }

    #[test]
    fn separator_arithmetic() {
        let err = separator_sizes(3, 360, &q(1, 100)).unwrap_err();
        assert!(err.contains("d₁"));
        let s = snap_separator_n(3, 360, &q(1, 100)).unwrap();
        assert_eq!(s.n, 660);
        assert_eq!((s.x0, s.x1, s.d0, s.d1), (110, 363, 33, 10));
    }

    #[test]
    fn separator_verifies() {
        let c = gen_ore_posa_separator(3, 360, &q(1, 100), true).unwrap();
        assert!(c.verified(), "{:?}", c.checks);
        assert!(gen_ore_posa_separator(3, 360, &q(1, 100), false).is_err());
    }

    #[test]
    fn random_extremes() {
        assert_eq!(gen_random(7, 1.0, 0).unwrap().graph.edge_count(), 21);
        assert_eq!(gen_random(7, 0.0, 0).unwrap().graph.edge_count(), 0);
        let a = gen_random(20, 0.5, 9).unwrap().graph.edge_vec();
        assert_eq!(a, gen_random(20, 0.5, 9).unwrap().graph.edge_vec());
        assert_eq!(gen_multipartite_random(3, 4, 1.0, 0).unwrap().graph.edge_count(), 48);
    }

    #[test]
    fn fragile_q2() {
        let c = gen_fragile_framework(2, 1).unwrap();
        assert_eq!(c.graph.n(), 17);
        assert!(c.check("sigma-bijective").unwrap().holds);
        assert!(c.check("no-square-hamilton-cycle").unwrap().holds);
        // Triangles such as {v1, v3, v6} use two path edges and one cycle edge,
        // which glues everything into a single tight component.
        let comps = c.check("two-tight-components").unwrap();
        assert!(!comps.holds && comps.detail.contains("1 tight"));
        assert!(gen_fragile_framework(4, 1).is_err());
        assert!(gen_fragile_framework(5, 1).is_err());
    }
}
