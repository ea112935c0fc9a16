use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(args)
        .arg("--cache-dir")
        .arg(root().join("data/cache"))
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let doc =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), doc)
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn demo_table() -> String {
    root().join("data/demo/reducible_1_chi3_chi4.json").to_string_lossy().into_owned()
}

fn all_pass(doc: &Value) -> bool {
    doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true)
}

#[test]
fn hyp_degenerate_route_with_oracle() {
    let (code, doc) = report(&["hyp", "--a", "1", "--c", "2", "--w", "-3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["route"], "degenerate");
    // ₂F₁(1,1;2;w) = log(1−w)/(−w)
    assert!((num(&doc["results"]["value"]["re"]) - 4f64.ln() / 3.0).abs() < 1e-12);
    assert!(num(&doc["checks"][0]["residual"]) <= 1e-9);
}

#[test]
fn hyp_continuation_and_series_routes() {
    let (code, doc) = report(&["hyp", "--a", "0.3", "--b", "0.8", "--c", "1.2", "--w", "-5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["route"], "continuation");
    assert!(num(&doc["checks"][0]["residual"]) <= 1e-9);

    let (code, doc) = report(&["hyp", "--w", "0.5", "--a", "1", "--b", "1", "--c", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["route"], "series");
    assert!((num(&doc["results"]["value"]["re"]) - 2.0 * 2f64.ln()).abs() < 1e-13);
    assert!(doc["checks"].as_array().unwrap().is_empty());
}

#[test]
fn hyp_domain_error_exits_2_with_json() {
    let (code, doc) = report(&["hyp", "--a", "1", "--c", "2", "--w", "3"]);
    assert_eq!(code, 2);
    assert_eq!(doc["command"], "hyp");
    assert_eq!(doc["error"]["kind"], "DomainError");
}

#[test]
fn usage_error_exits_2() {
    assert_eq!(run(&["hyp", "--a", "1"]).status.code(), Some(2));
    assert_eq!(run(&["lfun-eval", "--s", "0.5", "--twist", "tan:1:3"]).status.code(), Some(2));
}

#[test]
fn zeros_ranges() {
    let (_, doc) = report(&["zeros", "--t-min", "10", "--t-max", "15"]);
    let z = doc["results"]["zeros"].as_array().unwrap();
    assert_eq!(z.len(), 1);
    assert!((num(&z[0]) - 14.13472514).abs() < 1e-7);

    let (_, doc) = report(&["zeros", "--t-min", "20", "--t-max", "26"]);
    let z: Vec<f64> = doc["results"]["zeros"].as_array().unwrap().iter().map(num).collect();
    assert_eq!(z.len(), 2);
    assert!((z[0] - 21.0220).abs() < 1e-4 && (z[1] - 25.0109).abs() < 1e-4, "{z:?}");

    let (code, doc) = report(&["zeros", "--t-min", "0", "--t-max", "5", "--plot"]);
    assert_eq!(code, 0);
    assert!(doc["results"]["zeros"].as_array().unwrap().is_empty());
    assert_eq!(doc["results"]["plot"].as_array().unwrap().len(), 101);

    assert_eq!(run(&["zeros", "--t-min", "0", "--t-max", "150"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_and_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["converse-vandermonde", "--u", "1", "--v", "4", "--level", "1", "--m", "5", "--t0", "1", "--z", "1,2"];
    let a = run(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let b = run(&with_out);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn char_report() {
    let (code, doc) = report(&["char", "--modulus", "5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["count"], 4);
    assert_eq!(doc["results"]["primitive_count"], 3);
    assert_eq!(doc["checks"].as_array().unwrap().len(), 6);
    assert!(all_pass(&doc));
}

#[test]
fn lfun_eval_lanes_agree() {
    let (_, exact) = report(&["lfun-eval", "--s", "0.5,1"]);
    let (_, smooth) = report(&["lfun-eval", "--s", "0.5,1", "--lane", "smoothed"]);
    let d = num(&exact["results"]["value"]["re"]) - num(&smooth["results"]["value"]["re"]);
    assert!(d.abs() < 1e-9, "{d}");
    assert_eq!(run(&["lfun-eval", "--s", "0.5", "--twist", "cos:1:3:0", "--lane", "smoothed"]).status.code(), Some(2));
}

#[test]
fn twist_verify_passes_and_tightened_tolerance_fails() {
    let (code, doc) = report(&["twist-verify", "--q", "3"]);
    assert_eq!(code, 0, "{doc}");
    assert!(num(&doc["results"]["negative_control_residual"]) >= 0.1);
    let (code, _) = report(&["twist-verify", "--q", "3", "--tol", "1e-300"]);
    assert_eq!(code, 1);
    assert_eq!(run(&["twist-verify", "--q", "4"]).status.code(), Some(2));
}

#[test]
fn artin_ingest_primitivity() {
    let (code, doc) = report(&["artin-ingest", "--artin", &demo_table()]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["primitivity_proxy"]["primitive"], false);

    let (code, doc) = report(&["artin-ingest", "--offline", "--artin", "3.229.4t5.a.a", "--prime-bound", "50"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["primitivity_proxy"]["primitive"], true);
    assert!(doc["results"]["primitivity_proxy"]["witness"].as_u64().unwrap() <= 50);

    let (code, doc) = report(&["artin-ingest", "--offline", "--artin", "3.999.4t5.a.a"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "CacheMiss");
}

#[test]
fn artin_quotient_round_trip() {
    let (code, doc) = report(&["artin-quotient", "--artin", &demo_table()]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["epsilon"], 1);
    assert_eq!(
        doc["results"]["structure"]["chi1"]["conductor"].as_u64().unwrap()
            * doc["results"]["structure"]["chi2"]["conductor"].as_u64().unwrap(),
        12
    );
    let (code, doc) = report(&["artin-quotient", "--offline", "--artin", "3.229.4t5.a.a"]);
    assert_eq!(code, 0);
    assert!(doc["results"]["structure"].is_null());
}

#[test]
fn converse_vandermonde_extension() {
    let (code, doc) = report(&[
        "converse-vandermonde",
        "--u",
        "1",
        "--v",
        "4",
        "--level",
        "1",
        "--m",
        "6",
        "--t0",
        "2",
        "--z",
        "1,2",
    ]);
    assert_eq!(code, 0);
    assert!(doc["results"]["extension"]["lambda0"].is_string());
    assert_eq!(doc["checks"].as_array().unwrap().len(), 2);
    assert_eq!(
        run(&["converse-vandermonde", "--u", "1", "--v", "4", "--level", "1", "--m", "3", "--t0", "7"]).status.code(),
        Some(2)
    );
}

#[test]
fn converse_check_on_both_pairs() {
    let (code, doc) = report(&["converse-check"]);
    assert_eq!(code, 0, "{doc}");
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"contour_identity[y=0.3]") && names.contains(&"residue_I[k=0]"));
    let (code, doc) = report(&["converse-check", "--series", "pair:5:1:5:3"]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["results"]["level"], 25);
}

#[test]
fn cancellation_demo_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let zeros = dir.path().join("zeros.json");
    std::fs::write(&zeros, "[14.134725141897794, 21.02203963883221]").unwrap();
    let z = zeros.to_str().unwrap();

    let (code, doc) = report(&["cancellation-demo", "--artin", &demo_table(), "--zeros", z]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["label"], "HEURISTIC");
    // Λ(s,φ) = ξ(s)Λ(s,χ₃)Λ(s,χ₄) vanishes at zeros of ζ
    for p in doc["results"]["points"].as_array().unwrap() {
        assert_ne!(p["status"], "non_shared", "{p}");
    }

    let (code, doc) = report(&["cancellation-demo", "--offline", "--artin", "3.229.4t5.a.a", "--zeros", z]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["primitivity_proxy"]["primitive"], true);
    assert_eq!(doc["results"]["points"].as_array().unwrap().len(), 2);

    let missing = dir.path().join("missing.json");
    let (code, doc) = report(&["cancellation-demo", "--artin", &demo_table(), "--zeros", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "IoError");
}
