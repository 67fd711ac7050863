//! End-to-end runs of every subcommand through the library entry point,
//! including the JSON emission and the documented exit codes.

use std::path::Path;

fn run(args: &[&str]) -> (u8, String) {
    let mut argv: Vec<String> = vec!["embtool".into()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = embtool::run(&argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn emb_on_named_family() {
    let (code, out) = run(&["emb", "--family", "hyper_boat"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("emb = 7/4, K = 7"), "{out}");
    assert!(out.contains("w_star = 4/7"), "{out}");
    assert!(out.contains("weight"), "{out}");
}

#[test]
fn emb_json_round_trips() {
    let (code, out) = run(&["emb", "--family", "hyper_boat", "--json"]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["emb"], "7/4");
    assert_eq!(doc["w_star"], "4/7");
    assert_eq!(doc["K"], "7");
    assert!(doc["weights"].as_array().unwrap().len() >= 2);
    // bit-identical re-serialization through the schema
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
}

#[test]
fn emb_writes_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.txt");
    let (code, _) = run(&[
        "emb",
        "--family",
        "cycle:6",
        "--witness",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&witness).unwrap();
    assert!(text.contains("w_star: 3/5"), "{text}");
}

#[test]
fn embk_both_oracles_agree() {
    let (code, out) = run(&["embk", "--k", "5", "--family", "cycle:6", "--json"]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["wed"], 3);
    assert_eq!(doc["emb_k"], "5/3");

    let (code, out) = run(&[
        "embk", "--k", "5", "--family", "cycle:6", "--oracle", "brute", "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["wed"], 3);
}

#[test]
fn embk_budget_guard_exits_one() {
    let (code, out) = run(&[
        "embk", "--k", "5", "--family", "cycle:6", "--oracle", "brute", "--budget", "10",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("resource"), "{out}");
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.txt");
    write(&h, "vertices: x1 x2 x3 y\nedge: x1 x2 x3\nedge: x1 y\nedge: x2 y\nedge: x3 y\n");
    let e = dir.path().join("e.txt");
    write(&e, "k: 5\nmap 1: x1\nmap 2: x2\nmap 3: x3\nmap 4: y\nmap 5: y\n");
    let (code, out) = run(&[
        "verify",
        "--hypergraph",
        h.to_str().unwrap(),
        "--embedding",
        e.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("valid = true"), "{out}");
    assert!(out.contains("wed = 3"), "{out}");

    // an invalid embedding is a domain failure
    let bad = dir.path().join("bad.txt");
    write(&bad, "k: 2\nmap 1: x1\nmap 2: x2\n");
    let hc = dir.path().join("c6.txt");
    let (code0, text) = run(&["family", "cycle", "6"]);
    assert_eq!(code0, 0);
    write(&hc, &text);
    let badc = dir.path().join("badc.txt");
    write(&badc, "k: 2\nmap 1: x1\nmap 2: x4\n");
    let (code, out) = run(&[
        "verify",
        "--hypergraph",
        hc.to_str().unwrap(),
        "--embedding",
        badc.to_str().unwrap(),
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("valid = false"), "{out}");
    assert!(out.contains("do not touch"), "{out}");
}

#[test]
fn widths_full_report() {
    let (code, out) = run(&["widths", "--family", "hyper_boat", "--json"]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["acyclic"], false);
    assert_eq!(doc["chordal"], false);
    assert_eq!(doc["fhw"], "2");
    assert!(doc["proper_td_count"].as_u64().unwrap() >= 2);

    let (code, out) = run(&["widths", "--family", "cycle:4", "--proper-tds"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("proper tree decompositions = 2"), "{out}");
    assert!(!out.contains("fhw"), "{out}");
}

#[test]
fn reduce_then_eval_matches_direct_aggregation() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.txt");
    let (_, text) = run(&["family", "cycle", "3"]);
    write(&h, &text);
    let e = dir.path().join("e.txt");
    write(&e, "k: 3\nmap 1: x1\nmap 2: x2\nmap 3: x3\n");
    let g = dir.path().join("g.txt");
    write(&g, "n: 4\nedge 0 1 2\nedge 1 2 3\nedge 0 2 4\nedge 0 3 1\nedge 1 3 1\nedge 2 3 5\n");
    let inst = dir.path().join("inst.txt");
    let (code, out) = run(&[
        "reduce",
        "--hypergraph",
        h.to_str().unwrap(),
        "--embedding",
        e.to_str().unwrap(),
        "--graph",
        g.to_str().unwrap(),
        "--semiring",
        "tropical",
        "-o",
        inst.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("depth bound = 2"), "{out}");
    let sidecar = std::fs::read_to_string(dir.path().join("inst.txt.theta")).unwrap();
    assert!(sidecar.contains("parts: 3"), "{sidecar}");
    assert!(sidecar.contains("pair 1 2"), "{sidecar}");

    // triangle weights: {0,1,2} = 9, {0,1,3} = 4, {0,2,3} = 10, {1,2,3} = 9
    let (code, out) = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--semiring",
        "tropical",
        "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["value"], "4");
}

#[test]
fn eval_acyclic_flag() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.txt");
    write(
        &inst,
        "semiring: counting\ndomain a: 0 1\ndomain b: 0 1\nfactor edge(a b): (0,0)=2 (1,1)=3\n",
    );
    let (code, out) = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--semiring",
        "counting",
        "--acyclic",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("value = 5"), "{out}");
}

#[test]
fn family_emits_text_format() {
    let (code, out) = run(&["family", "hyper_boat"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("vertices: y1 y2 y3 z1 z2 z3"), "{out}");
    assert!(out.contains("edge: y1 y2 y3"), "{out}");

    let (code, out) = run(&["family", "hyperclique", "4", "3", "--json"]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _) = run(&["emb", "--family", "nonsense:1"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["emb", "--hypergraph", "/does/not/exist.txt"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["emb"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["bogus-subcommand"]);
    assert_eq!(code, 2);
    // malformed input file
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.txt");
    write(&h, "vertices: a b\nedge: a zz\n");
    let (code, _) = run(&["emb", "--hypergraph", h.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn repro_targets_pass() {
    for target in ["table1", "boat", "curve6"] {
        let (code, out) = run(&["repro", target]);
        assert_eq!(code, 0, "{target}: {out}");
        assert!(out.contains("PASS"), "{target}: {out}");
        assert!(!out.contains("FAIL"), "{target}: {out}");
    }
}

#[test]
fn repro_table1_is_bit_identical_across_runs() {
    let (_, first) = run(&["repro", "table1"]);
    let (_, second) = run(&["repro", "table1"]);
    assert_eq!(first, second);
    let (_, j1) = run(&["repro", "table1", "--json"]);
    let (_, j2) = run(&["repro", "table1", "--json"]);
    assert_eq!(j1, j2);
    let doc: serde_json::Value = serde_json::from_str(&j1).unwrap();
    assert_eq!(doc["pass"], true);
}
