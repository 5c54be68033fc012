use serde_json::Value;
use tightframe_web::{analyze_json, example_json, power_cycle_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn analyze_five_cycle() {
    let r = parse(&analyze_json("0 1\n1 2\n2 3\n3 4\n4 0\n", 2).unwrap());
    assert_eq!(r["report"]["component_count"], 1);
    assert_eq!(r["report"]["components"][0]["aperiodic"], true);
    assert_eq!(r["graph"]["n"], 5);
}

#[test]
fn power_cycle_in_square() {
    let ex = parse(&example_json("cycle-square", 9, 0).unwrap());
    let r = parse(&power_cycle_json(ex["edge_list"].as_str().unwrap(), 3, 1_000_000).unwrap());
    assert_eq!(r["oracle"]["found"], true);
    assert_eq!(r["oracle"]["witness"][0].as_array().unwrap().len(), 9);
}

#[test]
fn fragile_has_no_square_cycle() {
    let ex = parse(&example_json("fragile", 9, 0).unwrap());
    assert_eq!(ex["n"], 17);
    let r = parse(&power_cycle_json(ex["edge_list"].as_str().unwrap(), 3, 10_000_000).unwrap());
    assert_eq!(r["oracle"]["found"], false);
    assert_eq!(r["oracle"]["timed_out"], false);
}

#[test]
fn rejects_bad_input() {
    assert!(analyze_json("0 x\n", 2).is_err());
    assert!(analyze_json("0 1\n", 7).is_err());
    assert!(example_json("nope", 3, 0).is_err());
    let big = example_json("complete", 30, 0).unwrap();
    assert!(power_cycle_json(parse(&big)["edge_list"].as_str().unwrap(), 2, 10).is_err());
}

#[test]
fn json_input_accepted() {
    let r = parse(&analyze_json(r#"{"n": 3, "edges": [[0,1],[1,2],[0,2]]}"#, 3).unwrap());
    assert_eq!(r["report"]["cliques"], 1);
}
