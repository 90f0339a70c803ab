//! End-to-end checks of the binary: output formats, exit codes, file I/O.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsr"))
        .args(args)
        .env_remove("DSR_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dsr-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn lambda1_prints_twelve_decimals() {
    let out = dsr(&["lambda1", "Bw"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2.000000000000\n");

    let out = dsr(&["lambda1", "Bg"]);
    assert_eq!(stdout(&out), "2.732050807569\n");
}

#[test]
fn lambda1_full_spectrum_appends_eigenvalues() {
    let out = dsr(&["lambda1", "Bg", "--full-spectrum"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("2.732050807569 ["));
    assert!(text.contains("-2.000000000000"));
}

#[test]
fn lambda1_rejects_disconnected_with_component_listing() {
    // "A?" is the edgeless graph on two vertices
    let out = dsr(&["lambda1", "A?"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("disconnected"), "{err}");
    assert!(err.contains("{0}") && err.contains("{1}"), "{err}");
}

#[test]
fn lambda1_rejects_malformed_graph6() {
    let out = dsr(&["lambda1", "not graph6!"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lambda1_reads_files_line_by_line() {
    let dir = temp_dir("glist");
    let path = dir.join("graphs.g6");
    std::fs::write(&path, "Bw\nBg\n").unwrap();
    let out = dsr(&["lambda1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2.000000000000\n2.732050807569\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn ckappa_prints_value_and_witness() {
    // C6
    let out = dsr(&["ckappa", "EhEG", "--r", "2", "--h", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("2\n"), "{text}");
    assert!(text.contains("witness: {0,3}"), "{text}");
}

#[test]
fn ckappa_prints_undefined_when_no_cut_exists() {
    // C5
    let out = dsr(&["ckappa", "Dhc", "--r", "2", "--h", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "undefined\n");
}

#[test]
fn ckappa_rejects_r_below_two_as_usage_error() {
    let out = dsr(&["ckappa", "EhEG", "--r", "1", "--h", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_emits_graph6_and_validation_json() {
    let out = dsr(&[
        "family", "--case", "iii", "--n", "6", "--r", "2", "--h", "1", "--delta", "2",
        "--ckappa", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let g6 = lines.next().unwrap();
    let rest: String = lines.collect::<Vec<_>>().join("\n");
    let doc: serde_json::Value = serde_json::from_str(&rest).unwrap();
    assert_eq!(doc["graph6"], g6);
    assert_eq!(doc["case"], "iii");
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["checks"]["min_degree"]["actual"], 2);
    assert!(doc["manifest"]["versions"]["package"].is_string());

    // K1 v (K3 u K2) round-trips to the expected structure
    let g = dsr::parse_graph6(g6).unwrap();
    let expected = dsr::families::clique_join(1, &[3, 2]).unwrap();
    assert_eq!(g, expected);
}

#[test]
fn family_auto_selects_case_from_parameters() {
    let out = dsr(&[
        "family", "--n", "6", "--r", "2", "--h", "1", "--delta", "1", "--ckappa", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rest: String = text.lines().skip(1).collect::<Vec<_>>().join("\n");
    let doc: serde_json::Value = serde_json::from_str(&rest).unwrap();
    assert_eq!(doc["case"], "i");
}

#[test]
fn family_rejects_infeasible_parameters_naming_the_inequality() {
    let out = dsr(&[
        "family", "--n", "5", "--r", "2", "--h", "2", "--delta", "1", "--ckappa", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("ckappa + r(h+1)"), "{err}");
}

#[test]
fn enumerate_dumps_graph6_lines() {
    let out = dsr(&["enumerate", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    for line in &lines {
        let g = dsr::parse_graph6(line).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_connected());
    }

    let dir = temp_dir("enum");
    let path = dir.join("n5.g6");
    let out = dsr(&["enumerate", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 21);
    std::fs::remove_dir_all(&dir).ok();

    let out = dsr(&["enumerate", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_needs_a_mode_flag() {
    let out = dsr(&["verify", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_edge_lemma_exits_zero_and_writes_reports() {
    let dir = temp_dir("edge");
    let out = dsr(&[
        "verify",
        "--edge-lemma",
        "--n",
        "5",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(json["edge_deletion"]["violations"], 0);
    assert_eq!(json["edge_deletion"]["n"], 5);
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    assert!(csv.starts_with("n,graphs_checked"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_join_lemma_exits_zero() {
    let out = dsr(&["verify", "--join-lemma", "--n-max", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 violations"));
}

#[test]
fn verify_theorem_match_grid_exits_zero() {
    // at order 5 every class with the hypothesis met matches
    let out = dsr(&["verify", "--theorem", "--n", "5", "--r", "2", "--h", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("MATCH"));
}

#[test]
fn verify_theorem_mismatch_exits_one_with_reports() {
    let dir = temp_dir("theorem6");
    let out = dsr(&[
        "verify",
        "--theorem",
        "--n",
        "6",
        "--r",
        "2",
        "--h",
        "1",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("MISMATCH"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    let reports = json["theorem"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 5);
    for rep in reports {
        // schema: exactly the report fields, timing lives in the manifest
        let obj = rep.as_object().unwrap();
        let mut fields: Vec<&str> = obj.keys().map(String::as_str).collect();
        fields.sort_unstable();
        assert_eq!(
            fields,
            vec![
                "class_size",
                "key",
                "min_lambda1",
                "minimizers",
                "predicted",
                "verdict"
            ]
        );
    }
    assert!(json["manifest"]["timing"]["per_class"].is_object());
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_theorem_infeasible_grid_respects_strict_flag() {
    // (n=5, r=2, h=2): no graph admits a valid cut, so nothing is checkable
    let out = dsr(&["verify", "--theorem", "--n", "5", "--r", "2", "--h", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("21 with undefined ckappa"), "{text}");
    assert!(text.contains("no class satisfies the hypothesis"), "{text}");

    let out = dsr(&[
        "verify", "--theorem", "--n", "5", "--r", "2", "--h", "2", "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_theorem_reads_graph6_source_files() {
    let dir = temp_dir("source");
    let path = dir.join("order5.g6");
    let lines: Vec<String> = dsr::enumeration::enumerate_connected(5)
        .unwrap()
        .iter()
        .map(dsr::Graph::to_graph6)
        .collect();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let out = dsr(&[
        "verify",
        "--theorem",
        "--n",
        "5",
        "--r",
        "2",
        "--h",
        "1",
        "--source",
        path.to_str().unwrap(),
        "--out",
        dir.join("rep").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("rep").join("report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(json["theorem"]["graphs_total"], 21);
    // ingested files are digested into the manifest
    let digests = json["manifest"]["input_digests"].as_object().unwrap();
    assert_eq!(digests.len(), 1);
    let digest = digests.values().next().unwrap().as_str().unwrap();
    assert_eq!(digest.len(), 64);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_theorem_rejects_source_with_wrong_order() {
    let dir = temp_dir("badsource");
    let path = dir.join("mixed.g6");
    std::fs::write(&path, "Bw\n").unwrap(); // order 3, sweep expects 5
    let out = dsr(&[
        "verify",
        "--theorem",
        "--n",
        "5",
        "--r",
        "2",
        "--h",
        "1",
        "--source",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("order"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cache_round_trip_reuses_results() {
    let dir = temp_dir("cache");
    let cache_dir = dir.join("cache");
    let run = |out: &str| {
        Command::new(env!("CARGO_BIN_EXE_dsr"))
            .args([
                "verify", "--theorem", "--n", "5", "--r", "2", "--h", "1", "--out", out,
            ])
            .env("DSR_CACHE_DIR", cache_dir.to_str().unwrap())
            .output()
            .expect("binary runs")
    };
    let first = run(dir.join("a").to_str().unwrap());
    assert_eq!(first.status.code(), Some(0));
    let cache_file = cache_dir.join("evals.tsv");
    assert!(cache_file.is_file());
    let entries = std::fs::read_to_string(&cache_file).unwrap();
    assert_eq!(entries.lines().count(), 21);

    let second = run(dir.join("b").to_str().unwrap());
    assert_eq!(second.status.code(), Some(0));
    let a = std::fs::read_to_string(dir.join("a").join("report.csv")).unwrap();
    let b = std::fs::read_to_string(dir.join("b").join("report.csv")).unwrap();
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir).ok();
}
