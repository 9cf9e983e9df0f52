use std::path::PathBuf;

use mendlab::cli::{self, EXIT_EXPECTATION, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use mendlab::instances;
use mendlab::io;
use mendlab::lcl;
use mendlab::problems;
use serde_json::Value;

/// Scratch directory unique to one test.
fn scratch(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mendlab-cli-{}-{test}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("mendlab").chain(args.iter().copied());
    let code = cli::run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn read_json(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Path on four nodes labeled (⊥, 1, 1, ⊥).
fn clash_path(dir: &std::path::Path) -> PathBuf {
    let p = problems::make("coloring:3").unwrap();
    let g = instances::path(4).unwrap();
    let lam = p.encode_strs(&[None, Some("1"), Some("1"), None]).unwrap();
    let path = dir.join("path4.json");
    std::fs::write(&path, io::write_labeled(&p, &g, &lam)).unwrap();
    path
}

#[test]
fn census_subcommand() {
    let dir = scratch("census");
    let report = dir.join("census.json");
    let (code, text) = run(&["--json", report.to_str().unwrap(), "census-134"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("1296/1296 mendable"), "{text}");
    let doc = read_json(&report);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["total"], 1296);
    assert_eq!(doc["mendable"], 1296);
}

#[test]
fn mend_with_radius_one() {
    let dir = scratch("mend");
    let graph = clash_path(&dir);
    let report = dir.join("mend.json");
    let (code, _) = run(&[
        "--json",
        report.to_str().unwrap(),
        "mend",
        "--problem",
        "coloring:3",
        "--graph",
        graph.to_str().unwrap(),
        "--node",
        "0",
        "--max-radius",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    let doc = read_json(&report);
    assert_eq!(doc["t"], 1);
    assert_eq!(doc["center"], 0);

    // the mended instance replays as accepted
    let p = problems::make("coloring:3").unwrap();
    let (g, mu) = io::read_labeled(&p, &doc["instance"].to_string()).unwrap();
    assert!(mu.get(0).is_some());
    assert!(lcl::is_accepted(&p, &g, &mu).unwrap());

    // radius 0 is not enough
    let (code, _) = run(&[
        "mend",
        "--problem",
        "coloring:3",
        "--graph",
        graph.to_str().unwrap(),
        "--node",
        "0",
        "--max-radius",
        "0",
    ]);
    assert_eq!(code, EXIT_EXPECTATION);
}

#[test]
fn adversarial_radius_table_grows() {
    let dir = scratch("radius");
    let report = dir.join("radius.json");
    let (code, text) = run(&[
        "--json",
        report.to_str().unwrap(),
        "radius",
        "--problem",
        "ab123",
        "--family",
        "path",
        "--sizes",
        "5,7,9",
        "--mode",
        "adversarial",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(text.lines().count() >= 4);
    let radii: Vec<u64> = read_json(&report)["sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["max_radius_found"].as_u64().unwrap())
        .collect();
    assert_eq!(radii.len(), 3);
    assert!(radii.windows(2).all(|w| w[0] < w[1]), "{radii:?}");
}

#[test]
fn verify_replays_its_verdict() {
    let dir = scratch("verify");
    let graph = clash_path(&dir);
    let report = dir.join("verify.json");
    let (code, text) = run(&[
        "--json",
        report.to_str().unwrap(),
        "verify",
        "--problem",
        "coloring:3",
        "--graph",
        graph.to_str().unwrap(),
        "--expect",
        "accepted",
    ]);
    assert_eq!((code, text.trim()), (EXIT_OK, "accepted"));
    let doc = read_json(&report);
    assert_eq!(doc["accepted"], true);
    assert_eq!(doc["schema"], 1);

    // fill both holes so that the clash is no longer excused
    let p = problems::make("coloring:3").unwrap();
    let g = instances::path(4).unwrap();
    let bad = p.encode_strs(&[Some("2"), Some("1"), Some("1"), Some("2")]).unwrap();
    let bad_path = dir.join("bad.json");
    std::fs::write(&bad_path, io::write_labeled(&p, &g, &bad)).unwrap();
    let (code, _) = run(&["--json", report.to_str().unwrap(), "verify", "--problem", "coloring:3", "--graph", bad_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let doc = read_json(&report);
    assert_eq!(doc["accepted"], false);
    assert_eq!(doc["unhappy_nodes"], serde_json::json!([1, 2]));
    let (code, _) = run(&[
        "verify",
        "--problem",
        "coloring:3",
        "--graph",
        bad_path.to_str().unwrap(),
        "--expect",
        "accepted",
    ]);
    assert_eq!(code, EXIT_EXPECTATION);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["census-134", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);

    let dir = scratch("errors");
    let graph = clash_path(&dir);
    let (code, _) = run(&["verify", "--problem", "nonsense", "--graph", graph.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);

    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    let (code, text) = run(&["verify", "--problem", "coloring:3", "--graph", broken.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT, "{text}");
    let missing = dir.join("missing.json");
    assert_eq!(run(&["verify", "--problem", "coloring:3", "--graph", missing.to_str().unwrap()]).0, EXIT_INPUT);
    // mending a labeled node breaks the precondition
    let (code, _) = run(&["mend", "--problem", "coloring:3", "--graph", graph.to_str().unwrap(), "--node", "1"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn problem_list_is_sorted() {
    let (code, text) = run(&["problems", "list"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id"));
    let ids: Vec<&str> = lines.map(|l| l.split_whitespace().next().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    for id in ["ab123", "grid4", "orientation134", "pointer_lcl", "overlap_cycles"] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn lowerbound_suites() {
    let (code, text) = run(&["lowerbound", "ab123", "--n", "9"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert_eq!(run(&["lowerbound", "ab123", "--n", "8"]).0, EXIT_USAGE);
    assert_eq!(run(&["lowerbound", "binary3col_rigid_v2", "--n", "3"]).0, EXIT_OK);
}

#[test]
fn generation_is_seeded() {
    let dir = scratch("gen");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for out in [&a, &b] {
        let (code, _) = run(&[
            "--seed",
            "9",
            "gen",
            "--kind",
            "random_tree",
            "--n",
            "30",
            "--sample-problem",
            "coloring:3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    let p = problems::make("coloring:3").unwrap();
    let (g, lab) = io::read_labeled(&p, &std::fs::read_to_string(&a).unwrap()).unwrap();
    assert!(g.is_tree());
    assert!(lcl::is_accepted(&p, &g, &lab).unwrap());
}

#[test]
fn tree_and_solve_subcommands() {
    let dir = scratch("tree");
    let graph = dir.join("path.json");
    assert_eq!(run(&["gen", "--kind", "path", "--n", "100", "--out", graph.to_str().unwrap()]).0, EXIT_OK);
    let report = dir.join("layers.json");
    let (code, _) = run(&["--json", report.to_str().unwrap(), "tree", "decompose", "--graph", graph.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code, EXIT_OK);
    let doc = read_json(&report);
    assert_eq!(doc["layers"]["50"], "C1");
    assert_eq!(doc["separation_violations"], serde_json::json!([]));

    let solved = dir.join("solved.json");
    let (code, text) = run(&[
        "solve",
        "--problem",
        "coloring:3",
        "--graph",
        graph.to_str().unwrap(),
        "--k",
        "1",
        "--out",
        solved.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{text}");
    let p = problems::make("coloring:3").unwrap();
    let (g, lab) = io::read_labeled(&p, &std::fs::read_to_string(&solved).unwrap()).unwrap();
    assert!(lab.is_complete() && lcl::is_accepted(&p, &g, &lab).unwrap());
}

#[test]
fn automaton_classify() {
    let (code, text) = run(&["automaton", "classify", "--problem", "ab123"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(!text.is_empty());
    let (code, _) = run(&["automaton", "restrict", "--problem", "ab123", "--mode", "sideways"]);
    assert_eq!(code, EXIT_USAGE);
}
