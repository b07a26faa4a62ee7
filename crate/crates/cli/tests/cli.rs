use std::process::{Command, Output};

use serde_json::Value;

fn run_env(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dlenergy"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("SPECDL_THREADS", t),
        None => cmd.env_remove("SPECDL_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn energy_of_complete_bipartite_two_three() {
    let out = run(&["--family", "complete_bipartite:2,3", "energy"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    let e = &r["energy_report"];
    assert_eq!(e["dle"].as_f64(), Some(12.4));
    assert_eq!(e["dle_exact"], "62/5");
    assert_eq!(e["sigma"], 3);
    assert_eq!(e["wiener"], 14);
}

#[test]
fn energy_of_complete_graph() {
    let r = json(&run(&["energy", "--family", "complete:5"]));
    assert_eq!(r["energy_report"]["dle"].as_f64(), Some(8.0));
    assert_eq!(r["energy_report"]["dle_exact"], "8");
}

#[test]
fn paw_spectrum_from_graph6() {
    let r = json(&run(&["spectrum", "--graph6", "CN"]));
    assert_eq!(floats(&r["spectra"]["distance_laplacian"]), vec![7.0, 5.0, 4.0, 0.0]);
    assert!(r["spectra"].get("analytic_distance_laplacian").is_none());
}

#[test]
fn analytic_spectrum_attached_for_families() {
    let r = json(&run(&["spectrum", "--family", "complete_split:2,5"]));
    let pairs = r["spectra"]["analytic_distance_laplacian"].as_array().unwrap();
    let rendered: Vec<(String, u64)> = pairs
        .iter()
        .map(|p| (p["value"].as_str().unwrap().to_string(), p["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(
        rendered,
        vec![("8".to_string(), 2), ("5".to_string(), 2), ("0".to_string(), 1)]
    );
    assert_eq!(r["spectra"]["analytic_max_deviation"].as_f64(), Some(0.0));
}

#[test]
fn brouwer_sweep_passes() {
    let out = run(&["verify", "brouwer", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["summary"]["graphs"], 21);
    assert_eq!(r["summary"]["labeled_graphs"], 728);
    assert_eq!(r["summary"]["checks"], 21 * 5);
    assert!(r["summary"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn wiener_lower_equality_on_star() {
    let out = run(&["verify", "wiener-lower", "--family", "star:4"]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["bound_checks"][0];
    assert_eq!(c["lhs"].as_f64(), Some(10.0));
    assert_eq!(c["rhs"].as_f64(), Some(10.0));
    assert_eq!(c["equality"], true);
}

#[test]
fn connectivity_sweep_equality_only_on_paw() {
    let out = run(&["verify", "connectivity-bound", "--n", "4", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let equal: Vec<&str> = r["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["checks"][0]["equality"] == true)
        .map(|c| c["graph6"].as_str().unwrap())
        .collect();
    assert_eq!(equal, vec!["CN"]);
}

#[test]
fn bipartite_search_matches_prediction() {
    let out = run(&["search", "bipartite", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let x = &json(&out)["extremal"];
    assert_eq!(x["min_dle"].as_f64(), Some(16.0));
    assert_eq!(x["matches_prediction"], true);
    assert_eq!(x["minimizer_families"][0], "complete_bipartite:3,3");
}

#[test]
fn failed_prediction_exits_one() {
    let out = run(&["search", "independence", "--n", "6", "--alpha", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["extremal"]["matches_prediction"], false);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("mismatch"));
    assert!(!err.contains('{'));
}

#[test]
fn output_is_byte_identical_across_thread_counts() {
    for args in [
        &["census", "--n", "6"][..],
        &["verify", "all", "--n", "5"][..],
        &["search", "connectivity", "--n", "6", "--k", "2"][..],
    ] {
        let one = run_env(args, Some("1"));
        let four = run_env(args, Some("4"));
        assert_eq!(one.status.code(), four.status.code());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, run_env(args, Some("4")).stdout);
    }
}

#[test]
fn csv_flattens_bound_checks() {
    let out = run(&["verify", "brouwer", "--graph6", "CN", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("graph,theorem,case_label,index"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn edgelist_input_carries_digest() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("c4.txt");
    std::fs::write(&path, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let r = json(&run(&["energy", "--edgelist", path.to_str().unwrap()]));
    let digest = r["input"]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert!(digest.chars().all(|c| c.is_ascii_hexdigit()));
    assert_eq!(r["energy_report"]["wiener"], 8);
}

#[test]
fn integral_family_check() {
    let out = run(&["verify", "integral-family", "--family", "join:complete:2|star:3+complete_bipartite:2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["bound_checks"][0]["holds"], true);
}

#[test]
fn timing_is_opt_in() {
    assert!(json(&run(&["energy", "--graph6", "CN"])).get("timing").is_none());
    let r = json(&run(&["energy", "--graph6", "CN", "--timing"]));
    assert!(r["timing"]["elapsed_ms"].as_f64().is_some());
}

#[test]
fn disconnected_input_exits_three() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("split.txt");
    std::fs::write(&path, "4 2\n0 1\n2 3\n").unwrap();
    let out = run(&["energy", "--edgelist", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["energy", "--graph6", "!!"][..],
        &["energy"][..],
        &["energy", "--graph6", "CN", "--family", "complete:3"][..],
        &["verify", "no-such-bound", "--n", "4"][..],
        &["verify", "brouwer", "--n", "4", "--graph6", "CN"][..],
        &["verify", "dle-via-sk", "--family", "complete:4"][..],
        &["search", "independence", "--n", "5"][..],
        &["census", "--n", "8"][..],
        &["energy", "--family", "complete_bipartite:0,3"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("\"schema_version\""));
    }
    let out = run_env(&["energy", "--graph6", "CN"], Some("zero"));
    assert_eq!(out.status.code(), Some(2));
}
