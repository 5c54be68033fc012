use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::{json, Value};

use tightframe::allocation::{embed_on_blowup, EmbedParams};
use tightframe::framework::{certify_framework, probe_robustness, Strategy, Want};
use tightframe::generators::{
    gen_blowup, gen_bkt, gen_fragile_framework, gen_multipartite_random, gen_ore_posa_separator, gen_posa_extremal_k,
    gen_random, Construction,
};
use tightframe::graph::{load_graph, Format};
use tightframe::hypergraph::{build_clique_hypergraph, find_k_plus_1_clique};
use tightframe::oracle::{find_clique_factor, find_power_ham_cycle, framework_bruteforce, OracleVerdict};
use tightframe::pipeline::{analyze, compare, ProbeSpec};
use tightframe::rational::parse_q;
use tightframe::walks::{closed_walk_all_edges, verify_walk, walk_between};
use tightframe::{Error, Graph, KGraph};

use crate::manifest::{write_artifacts, Manifest};
use crate::{Cli, Command, Family, Global, OracleKind, StrategyFlag, WantFlag};

/// Stable exit-code contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Success,
    Negative,
    Input,
    Guard,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
            Status::Input => 2,
            Status::Guard => 3,
        }
    }

    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Success
        } else {
            Status::Negative
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let status = match e {
            Error::Guard(_) => Status::Guard,
            Error::Infeasible(_) => Status::Negative,
            _ => Status::Input,
        };
        CliError { status, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError { status: Status::Input, message: e.to_string() }
    }
}

fn with_path(e: Error, p: &Path) -> CliError {
    let mut c = CliError::from(e);
    c.message = format!("{}: {}", p.display(), c.message);
    c
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError { status: Status::Input, message: msg.into() }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub json: Value,
    pub table: String,
    pub status: Status,
}

/// Input bookkeeping for the manifest.
struct Ctx<'a> {
    base: &'a Path,
    inputs: Vec<PathBuf>,
    seed: Option<u64>,
}

impl Ctx<'_> {
    fn path(&mut self, p: &Path) -> PathBuf {
        self.inputs.push(p.to_path_buf());
        self.base.join(p)
    }

    fn graph(&mut self, p: &Path) -> CliResult<Graph> {
        let full = self.path(p);
        load_graph(&full, Format::from_path(&full)).map_err(|e| with_path(e, p))
    }

    fn hypergraph(&mut self, p: &Path) -> CliResult<KGraph> {
        let full = self.path(p);
        let text = std::fs::read_to_string(full).map_err(|e| with_path(e.into(), p))?;
        KGraph::from_json(&text).map_err(|e| with_path(e, p))
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| input_error(format!("not a list of integers: {s:?}")))).collect()
}

fn want_of(flags: &[WantFlag]) -> Want {
    Want { aperiodic: flags.contains(&WantFlag::Aperiodic), zero_free: flags.contains(&WantFlag::ZeroFree) }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn oracle_outcome(v: OracleVerdict, what: &str) -> Outcome {
    let status = if v.timed_out { Status::Guard } else { Status::from_bool(v.found) };
    let table = format!("{what}: found = {}, nodes = {}, budget exhausted = {}\n", yn(v.found), v.nodes_explored, yn(v.timed_out));
    Outcome { json: to_value(&v), table, status }
}

fn construction_outcome(c: Construction) -> Outcome {
    let json: Value = serde_json::from_str(&c.to_json()).expect("graph json parses");
    let mut table = format!("{} on {} vertices, {} edges\n", c.family, c.graph.n(), c.graph.edge_count());
    for ch in &c.checks {
        table.push_str(&format!("  {:<28} {:<4} {}\n", ch.name, yn(ch.holds), ch.detail));
    }
    Outcome { json, table, status: Status::from_bool(c.verified()) }
}

fn need<T>(x: Option<T>, flag: &str) -> CliResult<T> {
    x.ok_or_else(|| input_error(format!("--{flag} is required for this family")))
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> CliResult<Outcome> {
    Ok(match cmd {
        Command::Analyze { graph, k } => {
            let g = ctx.graph(graph)?;
            let r = analyze(&g, *k)?;
            let ok = r.best_report().is_some_and(|c| c.framework);
            Outcome { json: to_value(&r), table: r.table(), status: Status::from_bool(ok) }
        }
        Command::Certify { graph, k, hypergraph, want } => {
            let g = ctx.graph(graph)?;
            let h = match hypergraph {
                Some(p) => ctx.hypergraph(p)?,
                None => build_clique_hypergraph(&g, *k),
            };
            if h.k() != *k {
                return Err(input_error(format!("hypergraph is {}-uniform, --k is {k}", h.k())));
            }
            let want = want_of(want);
            let c = certify_framework(&g, &h, want)?;
            let v = c.verdict;
            let table = format!(
                "spanning {}  one component {}  pfm {}  |  framework {}  aperiodic {}  zero-free {}\n",
                yn(c.spanning),
                yn(c.component_witness.is_some()),
                yn(c.perfect_matching),
                yn(v.framework),
                yn(v.aperiodic),
                yn(v.zero_free)
            );
            Outcome { json: to_value(&c), table, status: Status::from_bool(v.satisfies(want)) }
        }
        Command::Probe { graph, k, hypergraph, mu, trials, seed, strategy, want } => {
            ctx.seed = Some(*seed);
            let g = ctx.graph(graph)?;
            let h = match hypergraph {
                Some(p) => ctx.hypergraph(p)?,
                None => build_clique_hypergraph(&g, *k),
            };
            let strategy = match strategy {
                StrategyFlag::Random => Strategy::Random,
                StrategyFlag::AdversarialStructured => Strategy::AdversarialStructured,
            };
            let r = probe_robustness(&g, &h, &parse_q(mu)?, strategy, *trials, *seed, want_of(want))?;
            let passed = r.trials.iter().filter(|t| t.passed).count();
            let table = format!("linked edges {} (min {}), trials passed {passed}/{}\n", yn(r.linked_edges_hold), r.linked_min, r.trials.len());
            Outcome { json: to_value(&r), table, status: Status::from_bool(r.all_trials_passed) }
        }
        Command::Walk { graph, k, congruence, from, to, clique } => {
            let g = ctx.graph(graph)?;
            let h = build_clique_hypergraph(&g, *k);
            let w = match (from, to) {
                (Some(a), Some(b)) => {
                    let clique = match clique {
                        Some(c) => parse_list(c)?,
                        None => find_k_plus_1_clique(&h).ok_or_else(|| input_error("K_k(G) has no (k+1)-clique; pass --clique"))?,
                    };
                    walk_between(&h, &parse_list(a)?, &parse_list(b)?, &clique)?
                }
                _ => closed_walk_all_edges(&h, *congruence)?,
            };
            let valid = verify_walk(&h, &w);
            let table = format!("walk of length {} (≡ {} mod {k}), closed {}, valid {}\n", w.length, w.congruence, yn(w.closed), yn(valid));
            Outcome { json: json!({ "walk": w, "valid": valid }), table, status: Status::from_bool(valid) }
        }
        Command::Embed { reduced, guest, k, sizes, seed, pi, alpha } => {
            ctx.seed = Some(*seed);
            let r = ctx.graph(reduced)?;
            let guest = ctx.graph(guest)?;
            let params = EmbedParams { k: *k, pi: parse_q(pi)?, alpha: parse_q(alpha)? };
            let e = embed_on_blowup(&r, &parse_list(sizes)?, &guest, &params, *seed)?;
            let table = format!("embedded {} vertices, sketch length {}\n", e.map.len(), e.sketch_length);
            Outcome { json: to_value(&e), table, status: Status::Success }
        }
        Command::Generate { family, n, k, q, m, mu, snap, p, r, size, seed, base, sizes } => {
            ctx.seed = *seed;
            let c = match family {
                Family::Bkt => gen_bkt(need(*n, "n")?)?,
                Family::PosaExtremalK => gen_posa_extremal_k(need(*k, "k")?, need(*n, "n")?)?,
                Family::OrePosaSeparator => {
                    let mu = parse_q(&need(mu.clone(), "mu")?)?;
                    gen_ore_posa_separator(need(*k, "k")?, need(*n, "n")?, &mu, *snap)?
                }
                Family::FragileFramework => gen_fragile_framework(need(*q, "q")?, m.unwrap_or(1))?,
                Family::Random => gen_random(need(*n, "n")?, need(*p, "p")?, need(*seed, "seed")?)?,
                Family::MultipartiteRandom => gen_multipartite_random(need(*r, "r")?, need(*size, "size")?, need(*p, "p")?, need(*seed, "seed")?)?,
                Family::Blowup => {
                    let b = ctx.graph(&need(base.clone(), "base")?)?;
                    gen_blowup(&b, &parse_list(&need(sizes.clone(), "sizes")?)?)?
                }
            };
            construction_outcome(c)
        }
        Command::Oracle { kind, graph, k, budget, hypergraph } => {
            let g = ctx.graph(graph)?;
            match kind {
                OracleKind::Powcycle => oracle_outcome(find_power_ham_cycle(&g, *k, *budget), "power of Hamilton cycle"),
                OracleKind::Factor => oracle_outcome(find_clique_factor(&g, *k, *budget)?, "clique factor"),
                OracleKind::Framework => {
                    let h = match hypergraph {
                        Some(p) => ctx.hypergraph(p)?,
                        None => build_clique_hypergraph(&g, *k),
                    };
                    let v = framework_bruteforce(&g, &h)?;
                    let table = format!("framework {}  aperiodic {}  zero-free {}\n", yn(v.framework), yn(v.aperiodic), yn(v.zero_free));
                    Outcome { json: to_value(&v), table, status: Status::from_bool(v.framework) }
                }
            }
        }
        Command::Compare { graph, k, budget, mu, trials, seed } => {
            ctx.seed = *seed;
            let g = ctx.graph(graph)?;
            let probe = match mu {
                Some(mu) => Some(ProbeSpec { mu: parse_q(mu)?, strategy: Strategy::Random, trials: *trials, seed: need(*seed, "seed")? }),
                None => None,
            };
            let c = compare(&g, *k, *budget, probe.as_ref())?;
            let mut json = to_value(&c);
            json["components"] = to_value(&c.analysis.components);
            let table = c.analysis.table() + &c.table();
            let status = if c.oracle.timed_out { Status::Guard } else { Status::Success };
            Outcome { json, table, status }
        }
        Command::Batch { .. } => return Err(input_error("batch manifests cannot nest")),
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Analyze { .. } => "analyze",
        Command::Certify { .. } => "certify",
        Command::Probe { .. } => "probe",
        Command::Walk { .. } => "walk",
        Command::Embed { .. } => "embed",
        Command::Generate { .. } => "generate",
        Command::Oracle { .. } => "oracle",
        Command::Compare { .. } => "compare",
        Command::Batch { .. } => "batch",
    }
}

/// Runs one command; with `-o`, also writes the artifact and its manifest.
pub fn run(cmd: &Command, global: &Global, base: &Path, argv: &[String]) -> CliResult<Outcome> {
    if let Command::Batch { manifest } = cmd {
        return run_batch(&base.join(manifest), global, base);
    }
    let mut ctx = Ctx { base, inputs: Vec::new(), seed: None };
    let outcome = execute(cmd, &mut ctx)?;
    if let Some(out) = &global.out {
        let manifest = Manifest::new(command_name(cmd), argv, ctx.seed, base, &ctx.inputs)?;
        let graph_file = matches!(cmd, Command::Generate { .. });
        write_artifacts(&base.join(out), &outcome.json, manifest, graph_file)?;
    }
    Ok(outcome)
}

/// `{"runs": [{"name": "...", "args": [...]}]}`; paths resolve against the
/// manifest's directory and each run writes into `OUT/name`.
fn run_batch(path: &Path, global: &Global, base: &Path) -> CliResult<Outcome> {
    let out = global.out.as_ref().map(|o| base.join(o)).ok_or_else(|| input_error("batch needs -o DIR"))?;
    let text = std::fs::read_to_string(path)?;
    let spec: Value = serde_json::from_str(&text).map_err(|e| input_error(format!("manifest: {e}")))?;
    let runs = spec.get("runs").and_then(Value::as_array).cloned().unwrap_or_default();
    std::fs::create_dir_all(&out)?;
    std::fs::write(out.join("manifest.json"), serde_json::to_string_pretty(&spec).expect("json") + "\n")?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut rows = Vec::new();
    let mut table = String::new();
    let mut worst = Status::Success;
    for (i, entry) in runs.iter().enumerate() {
        let name = entry.get("name").and_then(Value::as_str).map_or_else(|| format!("run-{i}"), str::to_string);
        if name.contains('/') || name.contains("..") {
            return Err(input_error(format!("run name {name:?} must be a plain directory name")));
        }
        let args: Vec<String> = entry
            .get("args")
            .and_then(Value::as_array)
            .ok_or_else(|| input_error(format!("run {name}: missing args")))?
            .iter()
            .map(|a| a.as_str().map(str::to_string).ok_or_else(|| input_error(format!("run {name}: args must be strings"))))
            .collect::<CliResult<_>>()?;
        let argv: Vec<String> = std::iter::once("tightframe".to_string()).chain(args.iter().cloned()).collect();
        let cli = Cli::try_parse_from(&argv).map_err(|e| input_error(format!("run {name}: {e}")))?;
        let global = Global { format: global.format, out: Some(out.join(&name)) };
        let status = match run(&cli.command, &global, dir, &args) {
            Ok(o) => o.status,
            Err(e) => {
                std::fs::create_dir_all(out.join(&name))?;
                std::fs::write(out.join(&name).join("error.txt"), format!("{}\n", e.message))?;
                e.status
            }
        };
        worst = worst.max(status);
        table.push_str(&format!("{name:<24} exit {}\n", status.code()));
        rows.push(json!({ "name": name, "exit": status.code() }));
    }
    Ok(Outcome { json: json!({ "runs": rows }), table, status: worst })
}
