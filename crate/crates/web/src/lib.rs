//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON string; the page in `www/` renders it.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use tightframe::generators::{gen_fragile_framework, gen_random};
use tightframe::oracle::find_power_ham_cycle;
use tightframe::pipeline::analyze;
use tightframe::Graph;

/// Largest graph the page will hand to the exact search.
pub const ORACLE_MAX_N: usize = 24;

fn parse(edges: &str) -> Result<Graph, String> {
    let text = edges.trim_start();
    if text.starts_with('{') {
        Graph::parse_json(text).map_err(|e| e.to_string())
    } else {
        Graph::parse_edge_list(text).map_err(|e| e.to_string())
    }
}

fn with_edges(g: &Graph, mut v: Value) -> Value {
    v["graph"] = json!({ "n": g.n(), "edges": g.edge_vec() });
    v
}

/// Tight components of `K_k(G)` and the framework verdict of each.
pub fn analyze_json(edges: &str, k: usize) -> Result<String, String> {
    let g = parse(edges)?;
    if !(2..=4).contains(&k) {
        return Err("k must be 2, 3 or 4 here".into());
    }
    let r = analyze(&g, k).map_err(|e| e.to_string())?;
    let v = json!({ "table": r.table(), "report": r });
    Ok(with_edges(&g, v).to_string())
}

/// Exact search for the `(k−1)`th power of a Hamilton cycle.
pub fn power_cycle_json(edges: &str, k: usize, budget: u64) -> Result<String, String> {
    let g = parse(edges)?;
    if g.n() > ORACLE_MAX_N {
        return Err(format!("the page limits the exact search to {ORACLE_MAX_N} vertices"));
    }
    let v = find_power_ham_cycle(&g, k, budget);
    Ok(with_edges(&g, json!({ "oracle": v })).to_string())
}

/// A small named instance as an edge list.
pub fn example_json(name: &str, param: usize, seed: u64) -> Result<String, String> {
    let g = match name {
        "cycle" => Graph::cycle(param.max(3)),
        "cycle-square" => Graph::cycle_power(param.max(5), 2),
        "complete" => Graph::complete(param.max(2)),
        "fragile" => gen_fragile_framework(2, 1).map_err(|e| e.to_string())?.graph,
        "random" => gen_random(param.min(ORACLE_MAX_N), 0.7, seed).map_err(|e| e.to_string())?.graph,
        other => return Err(format!("unknown example {other:?}")),
    };
    Ok(json!({ "edge_list": g.to_edge_list(), "n": g.n() }).to_string())
}

#[wasm_bindgen(js_name = analyzeGraph)]
pub fn analyze_graph(edges: &str, k: usize) -> Result<String, JsValue> {
    analyze_json(edges, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = findPowerCycle)]
pub fn find_power_cycle(edges: &str, k: usize, budget: f64) -> Result<String, JsValue> {
    power_cycle_json(edges, k, budget.max(0.0) as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = exampleGraph)]
pub fn example_graph(name: &str, param: usize, seed: f64) -> Result<String, JsValue> {
    example_json(name, param, seed.max(0.0) as u64).map_err(|e| JsValue::from_str(&e))
}
