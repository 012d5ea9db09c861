use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_archtrop-kit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("archtrop-kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const F1: &str = "1+x1^3+x2^2-3*x1*x2";

#[test]
fn heptagonal_cell() {
    let v = run_json(&["cell", "--system", "two-poly", "-w", "2,1"]);
    assert_eq!(v["schema"], "archtrop-kit/1");
    assert_eq!(v["cell"]["facet_count"], 7);
    assert_eq!(v["mixed_vertices"].as_array().unwrap().len(), 2);
    let facets = v["cell"]["constraints"].as_array().unwrap().iter().filter(|c| c["facet"] == true).count();
    assert_eq!(facets, 7);
}

#[test]
fn distance_on_the_variety() {
    let v = run_json(&["dist", "-f", "1-x1", "-w", "0"]);
    assert_eq!(v["distance"], 0.0);
    assert_eq!(v["classification"]["case"], "a");
}

#[test]
fn far_points_are_certified() {
    let v = run_json(&["classify", "-f", F1, "-w", "6,-6"]);
    assert_eq!(v["classification"]["case"], "b");
    assert!(v["classification"]["amoeba_distance_lower_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn start_points_of_the_example() {
    let v = run_json(&["startpoints", "--system", "two-poly", "-w", "2,1"]);
    let first = &v["candidates"][0];
    assert_eq!(first["index_sets"], serde_json::json!([[2, 3], [3, 4]]));
    let s = &first["start_system"];
    assert_eq!(s["roots"].as_array().unwrap().len(), 4);
    let ln10 = 10f64.ln();
    assert!((s["log_norms"][0].as_f64().unwrap() - ln10).abs() < 1e-10);
    assert!((s["log_norms"][1].as_f64().unwrap() - 1.5 * ln10).abs() < 1e-10);
    assert!(s["newton"].as_array().unwrap().iter().all(|n| n["status"] == "converged"));
}

#[test]
fn no_roots_branch() {
    let v = run_json(&["startpoints", "--system", "two-poly", "-w", "0,0"]);
    assert_eq!(v["no_roots"], true);
    assert_eq!(v["candidates"], serde_json::json!([]));
}

#[test]
fn subdivision_hole_counts() {
    let v = run_json(&["subdivision", "--system", "f1"]);
    assert_eq!(v["complement_components"]["total"], 4);
    assert_eq!(v["complement_components"]["bounded"], 1);
    let v = run_json(&["subdivision", "--system", "example-g"]);
    assert_eq!(v["complement_components"]["bounded"], 2);
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (scratch("a.csv"), scratch("b.csv"));
    let args = |p: &PathBuf| {
        vec!["sample-amoeba", "-f", F1, "--grid", "60", "--phases", "12", "--seed", "4", "--csv", p.to_str().unwrap()]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    let out_a = bin().args(args(&a)).output().unwrap();
    let out_b = bin().args(args(&b)).output().unwrap();
    assert!(out_a.status.success());
    // identical apart from the CSV path
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("csv");
        v
    };
    assert_eq!(strip(&out_a), strip(&out_b));
    let (ca, cb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ca, cb);
    let text = String::from_utf8(ca).unwrap();
    assert!(text.starts_with("w1,w2\n"));
    assert!(text.lines().count() > 100);
    let j1 = run(&["cell", "--system", "two-poly", "-w", "2,1", "--precision-bits", "256"]).stdout;
    let j2 = run(&["cell", "--system", "two-poly", "-w", "2,1", "--precision-bits", "256"]).stdout;
    assert_eq!(j1, j2);
}

#[test]
fn json_flag_writes_file() {
    let p = scratch("dist.json");
    let out = run(&["dist", "-f", F1, "-w", "0,0", "--json", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(v["command"], "dist");
    assert!((v["distance"].as_f64().unwrap() - 3f64.ln() / 5f64.sqrt()).abs() < 1e-14);
}

fn svg_paths(path: &PathBuf, class: &str) -> usize {
    let text = std::fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse_with_options(
        &text,
        roxmltree::ParsingOptions { allow_dtd: true, ..Default::default() },
    )
    .expect("well-formed SVG");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.tag_name().namespace(), Some("http://www.w3.org/2000/svg"));
    assert_eq!(root.attribute("version"), Some("1.1"));
    doc.descendants().filter(|n| n.has_tag_name("path") && n.attribute("class") == Some(class)).count()
}

#[test]
fn svg_renders() {
    let p = scratch("f1.svg");
    let v = run_json(&["archtrop", "-f", F1, "--render", p.to_str().unwrap()]);
    assert_eq!(svg_paths(&p, "cell"), v["segments"].as_array().unwrap().len());
    assert_eq!(svg_paths(&p, "cell"), 6);

    let q = scratch("system.svg");
    let v = run_json(&[
        "render",
        "--system",
        "two-poly",
        "-o",
        q.to_str().unwrap(),
        "--amoeba",
        "--cell",
        "2,1",
        "--grid",
        "40",
        "--phases",
        "8",
        "--window",
        "-11,11,-9,9",
    ]);
    assert_eq!(svg_paths(&q, "cell"), v["cells_drawn"].as_u64().unwrap() as usize);
    assert_eq!(svg_paths(&q, "amoeba"), 1);
    assert_eq!(svg_paths(&q, "query-cell"), 1);
}

#[test]
fn partition_instances_round_trip() {
    let p = scratch("inst.json");
    let out = run(&["reduce-partition", "--alpha", "1,2,3", "-o", p.to_str().unwrap()]);
    assert!(out.status.success());
    let v = run_json(&["mixedvertex", "--instance", p.to_str().unwrap()]);
    assert_eq!(v["has_mixed_vertex"], true);
    let v = run_json(&["mixedvertex", "--instance", p.to_str().unwrap(), "--certificate", "1,1,1,1"]);
    assert_eq!(v["valid"], false);
    let v = run_json(&["mixedvertex", "--alpha", "1,1,3"]);
    assert_eq!(v["has_mixed_vertex"], false);
    assert_eq!(v["balanced_partition"], false);
    let v = run_json(&["mixedvertex", "--alpha", "2,3,4,6", "--log"]);
    assert_eq!(v["has_mixed_vertex"], true);
    assert_eq!(v["balanced_partition"], true);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["cell", "-f", "1+x1^", "-w", "0"]), 2);
    assert_eq!(code(&["cell", "-f", "1+x1", "-w", "0,0,0", "--vars", "2"]), 2);
    assert_eq!(code(&["dist", "-w", "0"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["cell", "-f", F1, "-w", "0,0", "--precision-bits", "5000"]), 2);
    assert_eq!(code(&["startpoints", "-f", F1, "-w", "0,0"]), 2);
    assert_eq!(code(&["mixedvertex", "--alpha", "1,-2"]), 2);
    // computational failure: no variety to measure against
    assert_eq!(code(&["dist", "-f", "3*x1", "-w", "1"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn hausdorff_under_deformation() {
    let a = run_json(&["hausdorff", "-f", F1, "--grid", "80", "--phases", "12", "--spacing", "0.05"]);
    let b = run_json(&["hausdorff", "-f", F1, "--grid", "80", "--phases", "12", "--spacing", "0.05", "--deform", "4"]);
    assert!(a["cloud_to_archtrop"].as_f64().unwrap() <= 3f64.ln());
    assert!(b["symmetric"].as_f64().unwrap() < a["symmetric"].as_f64().unwrap());
}
