use std::path::Path;
use std::process::{Command, Output};

fn tf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightframe")).current_dir(dir).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn cycle(n: usize) -> String {
    (0..n).map(|i| format!("{} {}\n", i, (i + 1) % n)).collect()
}

#[test]
fn analyze_cycles() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "c5.txt", &cycle(5));
    write(d.path(), "c4.txt", &cycle(4));
    let o = tf(d.path(), &["analyze", "c5.txt", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["component_count"], 1);
    assert_eq!(r["components"][0]["aperiodic"], true);
    let r = json(&tf(d.path(), &["analyze", "c4.txt", "--k", "2"]));
    assert_eq!(r["components"][0]["framework"], true);
    assert_eq!(r["components"][0]["aperiodic"], false);
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "c5.txt", &cycle(5));
    assert_eq!(tf(d.path(), &["oracle", "powcycle", "c5.txt", "--k", "2"]).status.code(), Some(0));
    assert_eq!(tf(d.path(), &["oracle", "powcycle", "c5.txt", "--k", "3"]).status.code(), Some(1));
    assert_eq!(tf(d.path(), &["analyze", "missing.txt", "--k", "2"]).status.code(), Some(2));
    assert_eq!(tf(d.path(), &["analyze", "c5.txt"]).status.code(), Some(2));
    write(d.path(), "k12.txt", &(0..12).flat_map(|u| (u + 1..12).map(move |v| format!("{u} {v}\n"))).collect::<String>());
    let o = tf(d.path(), &["oracle", "framework", "k12.txt", "--k", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let o = tf(d.path(), &["oracle", "powcycle", "k12.txt", "--k", "6", "--budget", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn generate_writes_manifest() {
    let d = tempfile::tempdir().unwrap();
    let o = tf(d.path(), &["generate", "bkt", "--n", "300", "-o", "g.json"]);
    assert_eq!(o.status.code(), Some(0));
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("g.json")).unwrap()).unwrap();
    assert_eq!(g["n"], 300);
    assert_eq!(g["meta"]["verified"], true);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("g.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "generate");
    assert_eq!(m["outputs"][0]["path"], "g.json");
    assert_eq!(m["outputs"][0]["sha256"].as_str().unwrap().len(), 64);
    tf(d.path(), &["generate", "random", "--n", "12", "--p", "0.8", "--seed", "1", "-o", "r.json"]);
    let o = tf(d.path(), &["analyze", "r.json", "--k", "3", "-o", "out"]);
    assert!(o.stdout.is_empty());
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("out/manifest.json")).unwrap()).unwrap();
    assert_eq!(m["inputs"][0]["path"], "r.json");
    assert!(d.path().join("out/result.json").exists());
}

#[test]
fn random_generation_needs_seed() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(tf(d.path(), &["generate", "random", "--n", "10", "--p", "0.5"]).status.code(), Some(2));
    let a = tf(d.path(), &["generate", "random", "--n", "10", "--p", "0.5", "--seed", "4"]);
    let b = tf(d.path(), &["generate", "random", "--n", "10", "--p", "0.5", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compare_k6() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "k6.txt", &(0..6).flat_map(|u| (u + 1..6).map(move |v| format!("{u} {v}\n"))).collect::<String>());
    let r = json(&tf(d.path(), &["compare", "k6.txt", "--k", "3"]));
    assert_eq!(r["framework"], true);
    assert_eq!(r["aperiodic"], true);
    assert_eq!(r["oracle"]["found"], true);
}

#[test]
fn empty_batch() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "m.json", r#"{"runs": []}"#);
    let o = tf(d.path(), &["batch", "m.json", "-o", "art"]);
    assert_eq!(o.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(d.path().join("art")).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries, vec![std::ffi::OsString::from("manifest.json")]);
}

#[test]
fn batch_replays_identically() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "c5.txt", &cycle(5));
    write(
        d.path(),
        "m.json",
        r#"{"runs": [
            {"name": "an", "args": ["analyze", "c5.txt", "--k", "2"]},
            {"name": "gen", "args": ["generate", "random", "--n", "9", "--p", "0.6", "--seed", "3"]},
            {"name": "bad", "args": ["analyze", "nope.txt", "--k", "2"]}
        ]}"#,
    );
    let first = tf(d.path(), &["batch", "m.json", "-o", "a"]);
    assert_eq!(first.status.code(), Some(2));
    tf(d.path(), &["batch", "m.json", "-o", "b"]);
    for f in ["an/result.json", "an/manifest.json", "gen/result.json", "gen/manifest.json", "bad/error.txt", "manifest.json"] {
        let x = std::fs::read(d.path().join("a").join(f)).unwrap();
        let y = std::fs::read(d.path().join("b").join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
}
